#include "qsc/gaussian/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsc {

double std_normal_pdf(double t)
{
	return std::exp(-0.5 * t * t) * (0.5 * std::numbers::sqrt2 / std::sqrt(std::numbers::pi));
}

double std_normal_cdf(double t)
{
	return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

double std_normal_quantile(double u)
{
	if (!(u > 0.0 && u < 1.0))
		throw std::domain_error("normal quantile needs u in (0,1)");
	return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double sheppard(double rho)
{
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
	return 1.0 - 2.0 * std::acos(rho) / std::numbers::pi;
}

double guilbaud_constant()
{
	return 1.0 - 3.0 * std::acos(-1.0 / 3.0) / (2.0 * std::numbers::pi);
}

double majority_predictability(double rho)
{
	if (!(rho >= 0.0 && rho <= 1.0))
		throw std::domain_error("predictability needs rho in [0,1]");
	return 2.0 / std::numbers::pi * std::asin(std::sqrt(rho));
}

double predictability_crossover(double tol)
{
	// g > 0 near 0 (arcsin sqrt dominates), g < 0 near 1
	auto g = [](double r) { return majority_predictability(r) - r; };
	double lo = 0.01;
	double hi = 0.99;
	while (hi - lo > tol) {
		const double mid = 0.5 * (lo + hi);
		(g(mid) > 0.0 ? lo : hi) = mid;
	}
	return 0.5 * (lo + hi);
}

} // namespace qsc
