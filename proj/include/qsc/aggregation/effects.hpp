#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "qsc/boolean/function.hpp"

namespace qsc {

// Probability measure on {0,1}^n given by its support; bit i of a support
// point is x_{i+1}.
struct FiniteDistribution {
	int n = 0;
	std::vector<std::uint64_t> support;
	std::vector<double> weights;

	// weights nonnegative and summing to 1 within 1e-12
	void validate() const;
	double marginal(int i) const;

	static FiniteDistribution product(const std::vector<double>& p);
	// all voters copy one p-coin
	static FiniteDistribution identical_voters(int n, double p);
	// random weights on a random support of the given size
	static FiniteDistribution random(int n, std::size_t support_size, std::uint64_t seed);
};

// {"n": 3, "support": ["000", "111"], "weights": [0.4, 0.6]}; strings list
// x_1 first
nlohmann::json to_json(const FiniteDistribution& mu);
FiniteDistribution distribution_from_json(const nlohmann::json& j);

// pm1 functions are read through (1 + f) / 2
double expectation(const BooleanFunction& f, const FiniteDistribution& mu);

struct EffectsReport {
	std::vector<double> marginal;
	// mu[f | x_k = 1] - mu[f | x_k = 0]; zero where undefined
	std::vector<double> effect;
	std::vector<bool> defined;
	std::vector<double> covariance;
	// P_mu[f(x) != f(x with coordinate k flipped)]
	std::vector<double> pivot_influence;
	// Cov[f, x_k] = p (1 - p) e_k within 1e-12
	bool covariance_identity = true;
};
EffectsReport effects(const BooleanFunction& f, const FiniteDistribution& mu);

// 1 where sum_i w_i (2 x_i - 2 q) > 0 and 0 otherwise (ties to 0)
BooleanFunction weighted_majority(const std::vector<double>& w, double q);

struct WeightedMajorityCheck {
	double mu_f = 0.0;
	double p = 0.0;
	double q = 0.0;
	double delta = 0.0;
	double bound = 0.0;
	// sum w_i p_i = p W
	bool first_condition = false;
	// sum w_i p_i (1 - p_i) e_i <= p (1 - p) delta W
	bool second_condition = false;
	bool ok = false;
};
// p < 0 takes p = sum w_i p_i / W; delta < 0 takes the smallest delta
// meeting the second condition
WeightedMajorityCheck weighted_majority_bound_check(const std::vector<double>& w, const FiniteDistribution& mu, double q,
	double p = -1.0, double delta = -1.0);

// t uniform on [eps, 1] (midpoint grid), voters iid Bernoulli(t), simple
// majority of n (odd) voters
struct MixtureExample {
	double alice_wins = 0.0;
	double bound = 0.0;
	bool ok = false;
};
MixtureExample mixture_of_biases(int n, double eps, int grid = 10000);

struct PoincareCheck {
	double influence_sum = 0.0;
	double variance = 0.0;
	bool ok = false;
};
// sum_i I_{p,i}(f) >= Var_p[f]
PoincareCheck biased_poincare(const BooleanFunction& f, double p);

struct DictatorExtremality {
	double p = 0.0;
	double min_value = 0.0;
	std::vector<std::uint64_t> minimizers;
	bool only_dictators = false;
};
// over monotone balanced pm1 functions on n coordinates, the minimizers of
// E_p[f]; exhaustive, n <= 4
DictatorExtremality dictator_minimizers(int n, double p);

} // namespace qsc
