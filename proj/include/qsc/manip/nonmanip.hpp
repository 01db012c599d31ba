#pragma once

#include <cstdint>
#include <vector>

#include "qsc/boolean/function.hpp"
#include "qsc/manip/scf.hpp"

namespace qsc {

// Distance from f to the two-valued monotone rules on one pair {a,b}.
struct TwoValuedFit {
	int a = 0;
	int b = 1;
	// exact minimum over monotone g of Dist(f, a-if-g-else-b)
	double dist_exact = 0.0;
	// Dist(f, fiber majority h); h picks a on a fiber when #a >= #b there
	double dist_fiber_majority = 0.0;
	// Dist(f, h after swap monotonization); an upper bound
	double dist_monotonized = 0.0;
	// h as a 0/1 function on the a-vs-b preference cube
	BooleanFunction h;
	// distance of h to monotone Boolean functions (exact)
	double h_dist_to_monotone = 0.0;
	// fraction of cube edges where h decreases
	double h_violation_rate = 0.0;
	// violation rate >= distance / n
	bool violation_bound_ok = true;
};

struct NonmanipDistance {
	// exact min over voters i and nonempty H of Dist(f, top_H(sigma_i))
	double top_h = 0.0;
	int top_h_voter = 0;
	std::uint32_t top_h_mask = 0;
	// best pair, by exact distance
	TwoValuedFit two_valued;
	// bounds on the two-valued part over all pairs
	double two_valued_lower = 0.0;
	double two_valued_upper = 0.0;
	// min of the two families; exact because the two-valued part is
	double combined = 0.0;
	double combined_upper = 0.0;
};

TwoValuedFit two_valued_fit(SocialChoiceFunction& f, int a, int b, int threads = 0);
NonmanipDistance dist_to_nonmanip(SocialChoiceFunction& f, int threads = 0);

// Max of sum_z phi(z) gain[z] over nondecreasing phi: cube -> {0,1},
// solved exactly as a minimum cut; best receives an optimal phi.
long long max_gain_upset(const std::vector<long long>& gain, std::vector<std::uint8_t>* best = nullptr);
double boolean_dist_to_monotone(const BooleanFunction& h);
// swap-sort along each coordinate until nothing changes
BooleanFunction monotonize_by_sorting(const BooleanFunction& h);
double monotonicity_violation_rate(const BooleanFunction& h);

struct GsGate {
	double epsilon = 0.0;
	double m4_fraction = 0.0;
	double bound = 0.0;
	bool vacuous = true;
	bool ok = true;
};
// M_4 fraction against eps^5 / (1e9 n^7 k^46) with eps = dist_to_nonmanip
GsGate quantitative_gs_gate(SocialChoiceFunction& f, int threads = 0);

} // namespace qsc
