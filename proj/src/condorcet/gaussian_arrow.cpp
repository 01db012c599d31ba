#include "qsc/condorcet/gaussian_arrow.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsc/gaussian/normal.hpp"
#include "qsc/parallel.hpp"

namespace qsc {

namespace {

double p_plus(double t)
{
	if (std::isinf(t))
		return t < 0 ? 1.0 : 0.0;
	return 1.0 - std_normal_cdf(t);
}

} // namespace

GaussianArrowCheck gaussian_arrow_bound_check(const std::array<double, 3>& t, double eps, std::uint64_t samples,
	std::uint64_t seed, int threads)
{
	if (!(eps > 0.0 && eps <= 1.0))
		throw std::domain_error("eps must lie in (0,1]");
	// Cholesky factor of the unit-diagonal matrix with off-diagonal -1/3
	const double l11 = 1.0;
	const double l21 = -1.0 / 3.0;
	const double l22 = std::sqrt(1.0 - l21 * l21);
	const double l31 = -1.0 / 3.0;
	const double l32 = (-1.0 / 3.0 - l31 * l21) / l22;
	const double l33 = std::sqrt(1.0 - l31 * l31 - l32 * l32);
	const auto m = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			const double z1 = rng.normal();
			const double z2 = rng.normal();
			const double z3 = rng.normal();
			const double n1 = l11 * z1;
			const double n2 = l21 * z1 + l22 * z2;
			const double n3 = l31 * z1 + l32 * z2 + l33 * z3;
			const bool a = n1 > t[0];
			out[0] = a == (n2 > t[1]) && a == (n3 > t[2]) ? 1.0 : 0.0;
		},
		threads);
	GaussianArrowCheck c;
	c.p_agree = m[0].mean();
	c.std_error = m[0].std_error();
	c.epsilon = eps;
	c.bound = std::pow(eps / 2.0, 18);
	c.applicable = true;
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j) {
			if (i == j)
				continue;
			const double pi = p_plus(t[static_cast<std::size_t>(i)]);
			const double pj = p_plus(t[static_cast<std::size_t>(j)]);
			// u = +1 and u = -1
			if (pi + (1.0 - pj) < 2.0 * eps || (1.0 - pi) + pj < 2.0 * eps)
				c.applicable = false;
		}
	c.ok = !c.applicable || c.p_agree >= c.bound - 3.0 * c.std_error;
	return c;
}

double gaussian_arrow_zero_threshold_agreement()
{
	return 0.25 + 3.0 * std::asin(-1.0 / 3.0) / (2.0 * std::numbers::pi);
}

} // namespace qsc
