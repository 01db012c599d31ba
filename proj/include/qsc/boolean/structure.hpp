#pragma once

#include <cstdint>
#include <vector>

#include "qsc/boolean/function.hpp"

namespace qsc {

struct DecisionTree {
	struct Node {
		int var = -1;          // split coordinate, -1 for a leaf
		int child[2] = {-1, -1}; // child[b]: x_var = -1 (b=0) or +1 (b=1)
		int depth = 0;
		double mass = 0.0;     // probability of reaching the node
		double influence_sum = 0.0; // total influence of the restriction
		double mean = 0.0;
	};
	std::vector<Node> nodes;  // nodes[0] is the root
	int depth_bound = 0;      // ceil(2 + I(f) / (tau eps))
	int depth = 0;
	double bad_leaf_mass = 0.0; // mass of leaves with influence sum >= tau
	bool ok = false;          // bad_leaf_mass <= eps and depth <= depth_bound
};

// Splits on the most influential coordinate of the current restriction
// until the restriction's total influence drops below tau or the depth
// bound is reached.
DecisionTree decision_tree_regularize(const BooleanFunction& f, double tau, double eps);

inline constexpr double kFknConstant = 1e4;

struct FknReport {
	double level1_weight = 0.0;
	int dictator = -1;   // 0-based coordinate of the nearest signed dictator
	int sign = 1;
	double distance = 0.0; // P[f != sign * x_dictator]
	double bound = 0.0;    // kFknConstant * (1 - W1)
	bool balanced = false;
	bool ok = false;       // distance <= bound
};

FknReport fkn_analysis(const BooleanFunction& f);

} // namespace qsc
