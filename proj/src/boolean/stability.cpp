#include "qsc/boolean/stability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/generators.hpp"
#include "qsc/parallel.hpp"

namespace qsc {

namespace {

constexpr int kDenseStabilityArity = 20;

// P[Bin(n,q) = k]
long double binomial_pmf(int n, int k, long double q)
{
	if (k < 0 || k > n)
		return 0.0L;
	if (q <= 0.0L)
		return k == 0 ? 1.0L : 0.0L;
	if (q >= 1.0L)
		return k == n ? 1.0L : 0.0L;
	const long double lc = std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
		std::lgamma(static_cast<long double>(n - k) + 1);
	return std::exp(lc + k * std::log(q) + (n - k) * std::log1p(-q));
}

void check_rho(double rho)
{
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
}

int checked_pow(int base, int e)
{
	long long v = 1;
	for (int i = 0; i < e; ++i) {
		v *= base;
		if (v > (1LL << 30))
			throw std::invalid_argument("member size too large");
	}
	return static_cast<int>(v);
}

double tribes_stability_exact(int r, int m, double rho)
{
	const double q = (1.0 + rho) / 2.0;
	const double both = std::pow(q / 2.0, r);
	const double one = std::ldexp(1.0, -r);
	const double p_minus = std::pow(1.0 - one, m);
	const double p_both_minus = std::pow(1.0 - 2.0 * one + both, m);
	return 1.0 - 4.0 * (p_minus - p_both_minus);
}

} // namespace

double sheppard_limit(double rho)
{
	check_rho(rho);
	return 1.0 - 2.0 * std::acos(rho) / std::numbers::pi;
}

double majority_stability_exact(int n, double rho)
{
	if (n < 1 || n % 2 == 0)
		throw std::invalid_argument("majority needs odd n");
	check_rho(rho);
	const long double q = (1.0L + rho) / 2.0L;
	long double total = 0.0L;
	std::vector<long double> cdf2;
	for (int u = 0; u <= n; ++u) {
		const long double pu = binomial_pmf(n, u, 0.5L);
		// y has b1 + (n-u-b2) plus coordinates, b1 ~ Bin(u,q), b2 ~ Bin(n-u,q)
		const int w = n - u;
		cdf2.assign(static_cast<std::size_t>(w) + 1, 0.0L);
		long double acc = 0.0L;
		for (int b = 0; b <= w; ++b) {
			acc += binomial_pmf(w, b, q);
			cdf2[static_cast<std::size_t>(b)] = acc;
		}
		long double p_plus = 0.0L;
		for (int b1 = 0; b1 <= u; ++b1) {
			const int t = b1 + (n - 1) / 2 - u; // need b2 <= t
			if (t < 0)
				continue;
			p_plus += binomial_pmf(u, b1, q) * cdf2[static_cast<std::size_t>(std::min(t, w))];
		}
		const long double sx = 2 * u > n ? 1.0L : -1.0L;
		total += pu * sx * (2.0L * p_plus - 1.0L);
	}
	return static_cast<double>(total);
}

Estimate majority_stability_mc(int n, double rho, std::uint64_t samples, std::uint64_t seed, int threads)
{
	if (n < 1 || n % 2 == 0)
		throw std::invalid_argument("majority needs odd n");
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::invalid_argument("rho must lie in [-1, 1]");
	const double keep = (1.0 + rho) / 2.0;
	const auto m = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			int sx = 0;
			int sy = 0;
			for (int i = 0; i < n; ++i) {
				const int x = (rng() >> 63) ? 1 : -1;
				sx += x;
				sy += rng.uniform() < keep ? x : -x;
			}
			out[0] = (sx > 0) == (sy > 0) ? 1.0 : -1.0;
		},
		threads);
	return {m[0].mean(), m[0].std_error()};
}

StabilityCurve stability_curve(std::string_view family, double rho, const std::vector<int>& params)
{
	check_rho(rho);
	StabilityCurve c;
	c.family = std::string(family);
	c.rho = rho;
	for (int p : params) {
		int n = 0;
		double v = 0.0;
		if (family == "majority") {
			if (p < 1 || p % 2 == 0)
				throw std::invalid_argument("majority needs odd n");
			n = p;
			v = n <= kDenseStabilityArity ? stability(majority(n), rho) : majority_stability_exact(n, rho);
			c.has_limit = true;
			c.limit = sheppard_limit(rho);
		} else if (family == "electoral_college") {
			if (p < 1 || p % 2 == 0)
				throw std::invalid_argument("electoral college needs an odd square arity");
			n = checked_pow(p, 2);
			// block majorities of a correlated pair are again a correlated pair
			v = n <= kDenseStabilityArity ? stability(electoral_college(p), rho)
										  : majority_stability_exact(p, majority_stability_exact(p, rho));
			c.has_limit = true;
			c.limit = sheppard_limit(sheppard_limit(rho));
		} else if (family == "recursive_majority") {
			if (p < 1)
				throw std::invalid_argument("recursive majority needs h >= 1");
			n = checked_pow(3, p);
			if (n <= kDenseStabilityArity) {
				v = stability(recursive_majority(3, p), rho);
			} else {
				v = rho;
				for (int h = 0; h < p; ++h)
					v = majority_stability_exact(3, v);
			}
			c.has_limit = std::abs(rho) < 1.0;
			c.limit = 0.0;
		} else if (family == "tribes") {
			if (p < 1 || p > 20)
				throw std::invalid_argument("tribes width must lie in [1,20]");
			const int m = 1 << p;
			n = p * m;
			v = n <= kDenseStabilityArity ? stability(tribes(p, m), rho) : tribes_stability_exact(p, m, rho);
		} else if (family == "parity") {
			if (p < 1)
				throw std::invalid_argument("parity needs n >= 1");
			n = p;
			v = n <= kDenseStabilityArity ? stability(parity(n), rho) : std::pow(rho, n);
			c.has_limit = std::abs(rho) < 1.0;
			c.limit = 0.0;
		} else if (family == "dictator") {
			if (p < 1)
				throw std::invalid_argument("dictator needs n >= 1");
			n = p;
			v = n <= kDenseStabilityArity ? stability(dictator(n, 0), rho) : rho;
			c.has_limit = true;
			c.limit = rho;
		} else {
			throw std::invalid_argument("unknown stability family '" + std::string(family) + "'");
		}
		c.sizes.push_back(n);
		c.values.push_back(v);
	}
	if (c.has_limit) {
		c.monotone_toward_limit = true;
		for (std::size_t k = 1; k < c.values.size(); ++k)
			if (std::abs(c.values[k] - c.limit) > std::abs(c.values[k - 1] - c.limit) + 1e-12)
				c.monotone_toward_limit = false;
	}
	return c;
}

} // namespace qsc
