#include "qsc/boolean/properties.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsc/boolean/analysis.hpp"

namespace qsc {

namespace {

double binomial(int n, int k)
{
	double b = 1.0;
	for (int i = 1; i <= k; ++i)
		b = b * (n - k + i) / i;
	return b;
}

// next mask with the same popcount (Gosper)
std::uint64_t next_same_popcount(std::uint64_t v)
{
	const std::uint64_t t = v | (v - 1);
	return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

} // namespace

ResilienceVerdict is_resilient(const BooleanFunction& f, int r, double alpha, int max_order)
{
	const int n = f.n();
	if (r < 0 || r > n)
		throw std::invalid_argument("resilience order must satisfy 0 <= r <= n");
	if (r > max_order)
		throw std::length_error("resilience order " + std::to_string(r) + " above guard " + std::to_string(max_order));
	double work = 0.0;
	for (int s = 1; s <= r; ++s)
		work += binomial(n, s) * s * std::ldexp(1.0, s);
	if (work > kResilienceBudget)
		throw std::length_error("resilience enumeration budget exceeded");

	const FourierExpansion c = wht(f);
	ResilienceVerdict out;
	std::vector<double> local;
	int positions[64];
	for (int s = 1; s <= r; ++s) {
		local.assign(std::size_t{1} << s, 0.0);
		const std::uint64_t last = ((std::uint64_t{1} << s) - 1) << (n - s);
		for (std::uint64_t S = (std::uint64_t{1} << s) - 1;; S = next_same_popcount(S)) {
			int k = 0;
			for (std::uint64_t t = S; t; t &= t - 1)
				positions[k++] = std::countr_zero(t);
			// E[f | x_S = z] - E f = sum over nonempty T in S of fhat(T) z_T
			for (std::uint64_t local_t = 1; local_t < local.size(); ++local_t) {
				std::uint64_t T = 0;
				for (int b = 0; b < s; ++b)
					if (local_t >> b & 1u)
						T |= std::uint64_t{1} << positions[b];
				local[local_t] = c[T];
			}
			local[0] = 0.0;
			inverse_walsh_hadamard_inplace(local);
			for (std::uint64_t z = 0; z < local.size(); ++z) {
				const double dev = std::abs(local[z]);
				if (dev > out.worst_deviation) {
					out.worst_deviation = dev;
					out.witness_set = S;
					std::uint64_t values = 0;
					for (int b = 0; b < s; ++b)
						if (z >> b & 1u)
							values |= std::uint64_t{1} << positions[b];
					out.witness_values = values;
				}
			}
			if (S == last)
				break;
			local.assign(local.size(), 0.0);
		}
	}
	out.resilient = out.worst_deviation <= alpha + 1e-12;
	return out;
}

bool resilience_from_fourier(const FourierExpansion& c, int r, double alpha)
{
	double worst = 0.0;
	for (std::uint64_t S = 1; S < c.size(); ++S)
		if (std::popcount(S) <= r)
			worst = std::max(worst, std::abs(c[S]));
	return worst <= std::ldexp(alpha, -r) + 1e-15;
}

BoundCheck noisy_influence_sum_bound(const BooleanFunction& f, double rho)
{
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
	const FourierExpansion c = wht(f);
	double lhs = 0.0;
	for (std::uint64_t S = 1; S < c.size(); ++S) {
		const int k = std::popcount(S);
		lhs += k * std::pow(rho, 2 * k) * c[S] * c[S];
	}
	BoundCheck out;
	out.lhs = lhs;
	out.bound = std::abs(rho) < 1.0 ? 1.0 / (1.0 - std::abs(rho)) : std::numeric_limits<double>::infinity();
	out.ok = out.lhs <= out.bound + 1e-12;
	return out;
}

MartingaleDeltaReport martingale_delta(const BooleanFunction& f, std::vector<int> order)
{
	const int n = f.n();
	if (order.empty())
		for (int i = 0; i < n; ++i)
			order.push_back(i);
	if (static_cast<int>(order.size()) != n)
		throw std::invalid_argument("ordering must list every coordinate once");
	std::vector<bool> seen(static_cast<std::size_t>(n), false);
	for (int i : order) {
		if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)])
			throw std::invalid_argument("ordering is not a permutation");
		seen[static_cast<std::size_t>(i)] = true;
	}

	MartingaleDeltaReport rep;
	rep.order = order;
	rep.variance = f.variance();
	std::vector<double> g = f.values();
	const double norm = static_cast<double>(g.size());
	double partial = 0.0;
	double squares = 0.0;
	bool bound_ok = true;
	for (int c : order) {
		const std::uint64_t bit = std::uint64_t{1} << c;
		double cube = 0.0;
		double square = 0.0;
		for (std::uint64_t x = 0; x < g.size(); ++x) {
			if (x & bit)
				continue;
			const double half_gap = std::abs(g[x | bit] - g[x]) / 2.0;
			cube += 2.0 * half_gap * half_gap * half_gap;
			square += 2.0 * half_gap * half_gap;
			const double avg = (g[x] + g[x | bit]) / 2.0;
			g[x] = avg;
			g[x | bit] = avg;
		}
		cube /= norm;
		square /= norm;
		partial += cube;
		squares += square;
		const double inf = influence(f, c);
		bound_ok = bound_ok && square <= inf + 1e-12;
		rep.cube_increments.push_back(cube);
		rep.square_increments.push_back(square);
		rep.delta.push_back(partial);
		rep.influence.push_back(inf);
	}
	rep.orthogonality_ok = std::abs(squares - rep.variance) <= 1e-9;
	rep.increment_bound_ok = bound_ok;
	return rep;
}

double lp_norm(const BooleanFunction& f, double p)
{
	if (!(p > 0.0))
		throw std::domain_error("norm exponent must be positive");
	double s = 0.0;
	for (double v : f.values())
		s += std::pow(std::abs(v), p);
	return std::pow(s / static_cast<double>(f.size()), 1.0 / p);
}

NormComparison hypercontractivity_check(const BooleanFunction& f, double rho, double p, double q)
{
	if (!(q >= 1.0 && q <= p))
		throw std::domain_error("forward hypercontractivity needs 1 <= q <= p");
	if (p > 1.0 && rho * rho > (q - 1.0) / (p - 1.0) + 1e-12)
		throw std::domain_error("rho^2 exceeds (q-1)/(p-1)");
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
	NormComparison out;
	out.lhs = lp_norm(noise_operator(f, rho), p);
	out.rhs = lp_norm(f, q);
	out.ok = out.lhs <= out.rhs + 1e-12;
	return out;
}

NormComparison reverse_hypercontractivity_check(const BooleanFunction& f, double rho, double p, double q)
{
	if (!(0.0 < q && q < p && p < 1.0))
		throw std::domain_error("reverse hypercontractivity needs 0 < q < p < 1");
	if (rho * rho > (1.0 - p) / (1.0 - q) + 1e-12)
		throw std::domain_error("rho^2 exceeds (1-p)/(1-q)");
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
	for (double v : f.values())
		if (!(v > 0.0))
			throw std::domain_error("reverse hypercontractivity needs a strictly positive function");
	NormComparison out;
	out.lhs = lp_norm(noise_operator(f, rho), q);
	out.rhs = lp_norm(f, p);
	out.ok = out.lhs >= out.rhs - 1e-12;
	return out;
}

FourthMoment degree2_fourth_moment_check(const std::vector<std::vector<double>>& coeffs)
{
	const int n = static_cast<int>(coeffs.size());
	BooleanFunction::check_arity(n);
	std::vector<double> Q(static_cast<std::size_t>(n * n), 0.0);
	for (int i = 0; i < n; ++i) {
		if (static_cast<int>(coeffs[static_cast<std::size_t>(i)].size()) != n)
			throw std::invalid_argument("coefficient matrix must be square");
		for (int j = i + 1; j < n; ++j) {
			const double v = coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
			Q[static_cast<std::size_t>(i * n + j)] = v;
			Q[static_cast<std::size_t>(j * n + i)] = v;
		}
	}
	// start at x = (-1,...,-1) and walk a Gray code
	std::vector<int> x(static_cast<std::size_t>(n), -1);
	std::vector<double> row(static_cast<std::size_t>(n), 0.0);
	double q = 0.0;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			if (i != j)
				row[static_cast<std::size_t>(i)] += Q[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(j)];
	for (int i = 0; i < n; ++i)
		for (int j = i + 1; j < n; ++j)
			q += Q[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
	const std::uint64_t total = std::uint64_t{1} << n;
	double s2 = 0.0;
	double s4 = 0.0;
	for (std::uint64_t step = 0;; ++step) {
		const double q2 = q * q;
		s2 += q2;
		s4 += q2 * q2;
		if (step + 1 == total)
			break;
		const int j = std::countr_zero(step + 1);
		const int old = x[static_cast<std::size_t>(j)];
		q -= 2.0 * old * row[static_cast<std::size_t>(j)];
		for (int k = 0; k < n; ++k)
			if (k != j)
				row[static_cast<std::size_t>(k)] -= 2.0 * Q[static_cast<std::size_t>(k * n + j)] * old;
		x[static_cast<std::size_t>(j)] = -old;
	}
	FourthMoment out;
	out.second = s2 / static_cast<double>(total);
	out.fourth = s4 / static_cast<double>(total);
	out.bound = 81.0 * out.second * out.second;
	out.ok = out.fourth <= out.bound + 1e-12;
	return out;
}

} // namespace qsc
