#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsc {

// Broadcast on the rooted tree with 3 children per internal node and all
// 3^r leaves at depth r. The root label is uniform, each edge flips with
// probability eps, and every leaf vote is then raised to 1 with probability
// delta. The aggregator is recursive majority over the leaves.
struct TreeIsingSpec {
	int r = 1;
	double eps = 0.01;
	double delta = 0.01;

	void validate() const;
	std::uint64_t leaves() const;
};

inline constexpr int kTreeIsingMaxHeight = 10;

struct TreeIsingExact {
	double mu_m = 0.0;
	// P[m = 1 | y_i = 1] - P[m = 1 | y_i = 0], y_i the pre-noise leaf label
	double effect_y = 0.0;
	// the same gap conditioned on the observed vote x_i
	double effect_x = 0.0;
	double vote_marginal = 0.0;
};

// Closed recursions over the tree height; any r.
TreeIsingExact tree_ising_exact(const TreeIsingSpec& spec);

double tree_ising_mu_claim(const TreeIsingSpec& spec);
double tree_ising_effect_claim(const TreeIsingSpec& spec);
// the mean claim is only asserted for eps = delta <= 0.01
bool tree_ising_mu_claim_applies(const TreeIsingSpec& spec);

struct FkgPair {
	std::string a;
	std::string b;
	double p_a = 0.0;
	double p_b = 0.0;
	double p_ab = 0.0;
	double std_error = 0.0;
	bool ok = true;
};

struct TreeIsingExperiment {
	TreeIsingSpec spec;
	std::uint64_t samples = 0;
	double mu_m = 0.0;
	double mu_m_se = 0.0;
	// leaf 0, by the forced-label coupling with shared randomness
	double effect = 0.0;
	double effect_se = 0.0;
	TreeIsingExact exact;
	double mu_claim = 0.0;
	bool mu_claim_applies = false;
	bool mu_ok = true;
	double effect_claim = 0.0;
	bool effect_ok = true;
	std::vector<FkgPair> fkg;
	bool fkg_ok = true;

	bool ok() const { return mu_ok && effect_ok && fkg_ok; }
};

TreeIsingExperiment tree_ising_experiment(const TreeIsingSpec& spec, std::uint64_t samples, std::uint64_t seed, int threads = 0);

} // namespace qsc
