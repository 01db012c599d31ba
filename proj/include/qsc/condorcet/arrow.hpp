#pragma once

#include <array>
#include <string>

#include "qsc/boolean/function.hpp"

namespace qsc {

enum class ArrowVerdict { DictatorTriple, OppositeConstantsPair, Paradoxical };
std::string to_string(ArrowVerdict v);

struct ArrowClassification {
	ArrowVerdict verdict = ArrowVerdict::Paradoxical;
	double paradox_probability = 0.0;
	// nearest triple (s x_i, s x_i, s x_i); i is 0-based
	int dictator = -1;
	int sign = 1;
	std::array<double, 3> dictator_distances{};
	// nearest opposite-constants pair: 0 = (f,g), 1 = (f,h), 2 = (g,h)
	int pair = -1;
	std::array<int, 2> pair_values{};
	std::array<double, 2> pair_distances{};
};

// f sees the a>b votes, g the b>c votes, h the c>a votes
ArrowClassification classify_arrow(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h);

inline constexpr double kBalancedArrowConstant = 100.0;

struct BalancedArrowReport {
	double epsilon = 0.0;              // paradox probability
	std::array<int, 3> dictators{};    // FKN nearest dictator per function
	std::array<int, 3> signs{};
	std::array<double, 3> distances{};
	bool balanced = false;
	bool applicable = false;           // balanced and epsilon < 1/36
	bool common_dictator = false;
	bool ok = true;                    // vacuous unless applicable
};

BalancedArrowReport balanced_arrow_check(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h,
	double constant = kBalancedArrowConstant);

struct SetCorrelationBound {
	double p_joint = 0.0;
	double p1 = 0.0;
	double p2 = 0.0;
	double bound = 0.0;      // exp(-(a^2 + b^2 + 2|rho| a b) / (1 - rho^2)), P[B] = e^{-a^2}
	double eps_bound = 0.0;  // min(P1,P2)^{2/(1-|rho|)}
	bool ok = false;         // p_joint >= both bounds - 1e-12
};

// B1, B2 given by indicators (pm1 +1 or 01 value 1 means membership); exact
// joint through the coordinatewise transition, n <= 14
SetCorrelationBound boolean_reverse_hyp_check(const BooleanFunction& b1, const BooleanFunction& b2, double rho);

struct TwoInfluentialBound {
	double influence_f = 0.0;
	double influence_g = 0.0;
	double paradox_probability = 0.0;
	double bound = 0.0;      // eps^3 / 36
	bool ok = false;
};

// requires I_i(f) > eps, I_j(g) > eps, i != j, n <= 8
TwoInfluentialBound two_influential_paradox_bound(const BooleanFunction& f, const BooleanFunction& g,
	const BooleanFunction& h, int i, int j, double eps);

} // namespace qsc
