#pragma once

namespace qsc {

double std_normal_pdf(double t);
double std_normal_cdf(double t);
// inverse of std_normal_cdf on (0,1)
double std_normal_quantile(double u);

// kappa(rho) = 1 - 2 arccos(rho) / pi
double sheppard(double rho);
// 1 - 3 arccos(-1/3) / (2 pi)
double guilbaud_constant();
// (2/pi) arcsin(sqrt(rho)), rho in [0,1]
double majority_predictability(double rho);
// root of majority_predictability(rho) = rho inside (0,1), by bisection
double predictability_crossover(double tol = 1e-12);

} // namespace qsc
