#pragma once

#include <array>
#include <cstdint>

namespace qsc {

struct GaussianArrowCheck {
	double p_agree = 0.0;       // P[phi_1(N_1) = phi_2(N_2) = phi_3(N_3)]
	double std_error = 0.0;
	double epsilon = 0.0;
	double bound = 0.0;         // (eps / 2)^18
	bool applicable = false;    // non-degeneracy holds at level eps
	bool ok = true;             // p_agree >= bound - 3 SE when applicable
};

// phi_i(u) = +1 if u > t_i, else -1; t_i may be +-infinity. (N_1, N_2, N_3)
// standard with pairwise correlation -1/3.
GaussianArrowCheck gaussian_arrow_bound_check(const std::array<double, 3>& thresholds, double eps, std::uint64_t samples,
	std::uint64_t seed, int threads = 0);

// 1/4 + 3 arcsin(-1/3) / (2 pi): exact agreement for three zero thresholds
double gaussian_arrow_zero_threshold_agreement();

} // namespace qsc
