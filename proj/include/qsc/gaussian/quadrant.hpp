#pragma once

#include <vector>

namespace qsc {

struct QuadrantParams {
	double x = 0.5;
	double y = 0.5;
	double rho = 0.0;

	// x, y in (0,1), rho in (-1,1)
	void validate() const;
};

// P[X <= s, Y <= t] for a standard pair with correlation rho, |rho| < 1
double bivariate_normal_cdf(double s, double t, double rho);

// J_rho(x,y) = P[X <= Phi^-1(x), Y <= Phi^-1(y)]; x, y in [0,1] are
// accepted, the boundary handled by continuity
double j_rho(double x, double y, double rho);
inline double j_rho(const QuadrantParams& p)
{
	p.validate();
	return j_rho(p.x, p.y, p.rho);
}

// first partials: dJ/dx = Phi((t - rho s) / sqrt(1 - rho^2))
double j_rho_dx(double x, double y, double rho);
inline double j_rho_dy(double x, double y, double rho) { return j_rho_dx(y, x, rho); }
// dJ/drho, the bivariate density at (s,t)
double j_rho_drho(double x, double y, double rho);

struct JHessian {
	double xx = 0.0;
	double xy = 0.0;
	double yy = 0.0;
};

JHessian j_rho_hessian(double x, double y, double rho);
// fourth-order central differences of the analytic first partials
JHessian j_rho_hessian_fd(double x, double y, double rho, double h = 1e-4);

// largest eigenvalue of [[xx, sigma xy], [sigma xy, yy]]
double max_eigenvalue(const JHessian& h, double sigma);

inline constexpr double kJStep = 1e-4;

struct JDerivativeRow {
	double x = 0.0;
	double y = 0.0;
	double rho = 0.0;
	double sigma = 0.0;
	double value = 0.0;
	double max_eigenvalue = 0.0;       // finite-difference M_{rho sigma}
	double drho = 0.0;                 // central difference in rho
	double third_difference = 0.0;     // max |third finite difference| of J
};

struct JDerivativeReport {
	std::vector<JDerivativeRow> rows;
	double max_eigenvalue = 0.0;
	double max_drho_excess = 0.0;      // max |dJ/drho| - (1-rho^2)^{-3/2}
	double max_third_difference = 0.0;
	bool negative_semidefinite = false; // max_eigenvalue <= 1e-6
	bool drho_bounded = false;          // excess <= 1e-6
};

// n equally spaced points in [lo, hi]
std::vector<double> interior_grid(int n = 19, double lo = 0.05, double hi = 0.95);

JDerivativeReport j_rho_derivative_checks(const std::vector<double>& grid, double rho, const std::vector<double>& sigmas);

} // namespace qsc
