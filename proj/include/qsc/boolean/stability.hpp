#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/boolean/analysis.hpp"

namespace qsc {

// 1 - 2 arccos(rho) / pi
double sheppard_limit(double rho);

// E[maj_n(x) maj_n(y)] for rho-correlated x, y; exact O(n^2) sum over the
// number of +1 coordinates of x, any odd n
double majority_stability_exact(int n, double rho);

// Monte-Carlo E[maj_n(x) maj_n(y)] by direct simulation of the coordinates;
// no tabulation, so n may be large.
Estimate majority_stability_mc(int n, double rho, std::uint64_t samples, std::uint64_t seed, int threads = 0);

struct StabilityCurve {
	std::string family;
	double rho = 0.0;
	std::vector<int> sizes;      // arity n of each member
	std::vector<double> values;  // <f,f>_rho
	bool has_limit = false;
	double limit = 0.0;
	// |value - limit| nonincreasing along sizes
	bool monotone_toward_limit = false;
};

// family in {majority, electoral_college, recursive_majority, tribes,
// parity, dictator}; `params` are the size parameters of each member:
// n for majority/parity/dictator, r for electoral_college (n = r^2),
// h for recursive_majority (r = 3), r for tribes (m = 2^r).
// Members with n <= 20 are evaluated through the dense Fourier transform;
// larger members use exact block composition.
StabilityCurve stability_curve(std::string_view family, double rho, const std::vector<int>& params);

} // namespace qsc
