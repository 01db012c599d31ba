#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsc/manip/scf.hpp"

namespace qsc {

struct ManipulationRecord {
	Profile profile;
	int voter = 0;
	std::uint32_t misreport = 0;
	// width of the window of adjacent positions the misreport permutes
	int r = 0;
	int outcome = 0;
	int manipulated_outcome = 0;
};

// true when the record describes a real manipulation of f
bool is_valid_manipulation(const SocialChoiceFunction& f, const ManipulationRecord& m);
std::string describe(const ManipulationRecord& m, int k);

// Manipulation at `profile` using the narrowest window; r_max = 0 accepts
// any misreport.
std::optional<ManipulationRecord> is_manipulable_at(const SocialChoiceFunction& f, std::span<const std::uint32_t> profile, int r_max = 0);

// Per profile, the narrowest window of a manipulation (0 when none).
// Exhaustive; builds f's table if missing.
std::vector<std::uint8_t> manipulation_window_table(SocialChoiceFunction& f, int threads = 0);

enum class CensusMode { Auto, Exhaustive, MonteCarlo };
CensusMode census_mode_from_string(const std::string& s);

struct CensusReport {
	int k = 0;
	int n = 0;
	int r_max = 0;
	bool exhaustive = false;
	std::uint64_t profiles = 0;
	double p_manip = 0.0;
	double p_manip_se = 0.0;
	// index r in [0, r_max]; entries 0 and 1 are always zero
	std::vector<double> p_r;
	std::vector<double> p_r_se;
};

// P(sigma in M) and P(sigma in M_r), r <= r_max. Auto picks exhaustive
// when (k!)^n <= kExhaustiveProfileBudget.
CensusReport manipulation_census(SocialChoiceFunction& f, int r_max, CensusMode mode = CensusMode::Auto,
	std::uint64_t samples = 200000, std::uint64_t seed = 1, int threads = 0);

struct PairEstimate {
	double p = 0.0;
	double std_error = 0.0;
	std::uint64_t samples = 0;
};
// Uniform sigma, voter i, window start j in [0, k-4], and a uniform
// reordering of the four alternatives at positions j..j+3 of sigma_i.
PairEstimate manipulation_pair_estimate(const SocialChoiceFunction& f, std::uint64_t samples, std::uint64_t seed, int threads = 0);

// Exhaustive search for a manipulation point. Needs at least three
// attainable outcomes and no voter who always gets her top attainable
// outcome; throws std::invalid_argument otherwise.
ManipulationRecord gs_witness(SocialChoiceFunction& f, int threads = 0);

} // namespace qsc
