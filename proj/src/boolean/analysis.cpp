#include "qsc/boolean/analysis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qsc/parallel.hpp"

namespace qsc {

namespace {

void check_coordinate(const BooleanFunction& f, int i)
{
	if (i < 0 || i >= f.n())
		throw std::out_of_range("coordinate " + std::to_string(i) + " outside arity " + std::to_string(f.n()));
}

void check_rho(double rho)
{
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
}

} // namespace

double influence(const BooleanFunction& f, int i)
{
	check_coordinate(f, i);
	const std::uint64_t bit = std::uint64_t{1} << i;
	double s = 0.0;
	for (std::uint64_t x = 0; x < f.size(); ++x) {
		if (x & bit)
			continue;
		const double d = (f[x | bit] - f[x]) / 2.0;
		s += d * d;
	}
	return s / static_cast<double>(f.size() / 2);
}

std::vector<double> influences(const BooleanFunction& f)
{
	std::vector<double> out(static_cast<std::size_t>(f.n()));
	for (int i = 0; i < f.n(); ++i)
		out[static_cast<std::size_t>(i)] = influence(f, i);
	return out;
}

double total_influence(const BooleanFunction& f)
{
	double t = 0.0;
	for (double v : influences(f))
		t += v;
	return t;
}

double influence_fourier(const FourierExpansion& c, int i)
{
	if (i < 0 || i >= c.n())
		throw std::out_of_range("coordinate outside arity");
	const std::uint64_t bit = std::uint64_t{1} << i;
	double s = 0.0;
	for (std::uint64_t S = 0; S < c.size(); ++S)
		if (S & bit)
			s += c[S] * c[S];
	return s;
}

std::vector<double> influences_fourier(const FourierExpansion& c)
{
	std::vector<double> out(static_cast<std::size_t>(c.n()), 0.0);
	for (std::uint64_t S = 0; S < c.size(); ++S) {
		const double w = c[S] * c[S];
		for (std::uint64_t t = S; t; t &= t - 1)
			out[static_cast<std::size_t>(std::countr_zero(t))] += w;
	}
	return out;
}

double pivot_probability(const BooleanFunction& f, int i)
{
	check_coordinate(f, i);
	const std::uint64_t bit = std::uint64_t{1} << i;
	std::uint64_t count = 0;
	for (std::uint64_t x = 0; x < f.size(); ++x)
		if (!(x & bit) && f[x] != f[x | bit])
			++count;
	return static_cast<double>(count) / static_cast<double>(f.size() / 2);
}

BooleanFunction noise_operator(const BooleanFunction& f, double rho)
{
	check_rho(rho);
	std::vector<double> c = f.values();
	walsh_hadamard_inplace(c);
	std::vector<double> powers(static_cast<std::size_t>(f.n()) + 1, 1.0);
	for (std::size_t k = 1; k < powers.size(); ++k)
		powers[k] = powers[k - 1] * rho;
	const double scale = std::ldexp(1.0, -f.n());
	for (std::uint64_t S = 0; S < c.size(); ++S)
		c[S] *= scale * powers[static_cast<std::size_t>(std::popcount(S))];
	inverse_walsh_hadamard_inplace(c);
	return BooleanFunction(f.n(), std::move(c), Codomain::Real);
}

BooleanFunction noise_operator_direct(const BooleanFunction& f, double rho)
{
	check_rho(rho);
	std::vector<double> v = f.values();
	const double keep = (1.0 + rho) / 2.0;
	const double flip = (1.0 - rho) / 2.0;
	for (std::size_t half = 1; half < v.size(); half <<= 1) {
		for (std::size_t block = 0; block < v.size(); block += 2 * half) {
			for (std::size_t j = block; j < block + half; ++j) {
				const double lo = v[j];
				const double hi = v[j + half];
				v[j] = keep * lo + flip * hi;
				v[j + half] = flip * lo + keep * hi;
			}
		}
	}
	return BooleanFunction(f.n(), std::move(v), Codomain::Real);
}

double noisy_inner_product(const FourierExpansion& f, const FourierExpansion& g, double rho)
{
	check_rho(rho);
	if (f.n() != g.n())
		throw std::invalid_argument("arity mismatch in noisy inner product");
	std::vector<double> powers(static_cast<std::size_t>(f.n()) + 1, 1.0);
	for (std::size_t k = 1; k < powers.size(); ++k)
		powers[k] = powers[k - 1] * rho;
	double s = 0.0;
	for (std::uint64_t S = 0; S < f.size(); ++S)
		s += powers[static_cast<std::size_t>(std::popcount(S))] * f[S] * g[S];
	return s;
}

double noisy_inner_product(const BooleanFunction& f, const BooleanFunction& g, double rho)
{
	if (f.n() != g.n())
		throw std::invalid_argument("arity mismatch in noisy inner product");
	return noisy_inner_product(wht(f), wht(g), rho);
}

CorrelatedPairLaw::CorrelatedPairLaw(int n, double rho) : n_(n), rho_(rho)
{
	if (n < 0 || n > 64)
		throw std::out_of_range("pair law supports up to 64 coordinates");
	check_rho(rho);
}

double CorrelatedPairLaw::transition(std::uint64_t x, std::uint64_t y) const
{
	const int flips = std::popcount((x ^ y) & (n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1)));
	return std::pow((1.0 + rho_) / 2.0, n_ - flips) * std::pow((1.0 - rho_) / 2.0, flips);
}

Estimate noisy_inner_product_mc(const BooleanFunction& f, const BooleanFunction& g, double rho, std::uint64_t samples,
	std::uint64_t seed, int threads)
{
	if (f.n() != g.n())
		throw std::invalid_argument("arity mismatch in noisy inner product");
	const CorrelatedPairLaw law(f.n(), rho);
	const auto m = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			const auto [x, y] = law.sample(rng);
			out[0] = f[x] * g[y];
		},
		threads);
	return {m[0].mean(), m[0].std_error()};
}

} // namespace qsc
