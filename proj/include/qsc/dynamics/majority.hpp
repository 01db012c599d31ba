#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsc/dynamics/graph.hpp"

namespace qsc {

// opinions are +1 / -1
using OpinionState = std::vector<std::int8_t>;

// X_v(t+1) = sign of the sum of X_w(t) over neighbours w; needs odd degrees
OpinionState majority_step(const OpinionGraph& g, const OpinionState& x, int threads = 1);

// States X(0..T) until the orbit closes. With
//   L_t = 2 #{ordered adjacent (u,v) : X_u(t+1) != X_v(t)},
//   J_v(t) = (X_v(t+1) - X_v(t-1)) * sum_{w ~ v} X_w(t),
// J_v(t) >= 0 and L_t - L_{t-1} = -J_t hold exactly.
struct DynamicsTrace {
	std::vector<OpinionState> states;
	// L_0 .. L_{T-1}
	std::vector<long long> energy;
	// J_t at index t; J_0 is unused and zero
	std::vector<long long> coupling;
	int period = 0;
	// first t with X(t) = X(t + period)
	int entry_time = 0;
	bool energy_nonincreasing = true;
	bool energy_identity = true;
	bool coupling_nonnegative = true;
	// state at even times once periodic
	const OpinionState& even_limit() const { return states[static_cast<std::size_t>(entry_time + (entry_time % 2))]; }
};

// Throws std::logic_error with a state dump if no orbit of period <= 2 is
// reached within t_max steps or the energy checks fail.
DynamicsTrace run_to_period(const OpinionGraph& g, const OpinionState& x0, int t_max = 100000, int threads = 1);

// rows t, L_t, J_t, hamming distance from X(t) to the final state
void write_trace_csv(std::ostream& os, const DynamicsTrace& trace);

OpinionState random_state(int vertices, double p, std::uint64_t seed);

struct RetentionEstimate {
	double p = 0.0;
	double estimate = 0.0;
	double std_error = 0.0;
	std::uint64_t runs = 0;
};
// P[majority of the even-time limit is +] from iid p-biased starts; a tied
// final count scores 1/2. Runs share uniforms across p, so estimates
// from one seed are coupled monotonically.
RetentionEstimate retention_experiment(const OpinionGraph& g, double p, std::uint64_t runs, std::uint64_t seed, int threads = 0);

struct RetentionSweep {
	std::vector<RetentionEstimate> points;
	bool monotone = true;
};
RetentionSweep retention_sweep(const OpinionGraph& g, const std::vector<double>& ps, std::uint64_t runs, std::uint64_t seed, int threads = 0);

} // namespace qsc
