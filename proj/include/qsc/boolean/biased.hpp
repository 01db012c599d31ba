#pragma once

#include <vector>

#include "qsc/boolean/function.hpp"

namespace qsc {

// Product measure, p[i] = P[x_{i+1} = +1]
class BiasedMeasure {
public:
	BiasedMeasure(int n, double p);
	explicit BiasedMeasure(std::vector<double> p);

	int n() const noexcept { return static_cast<int>(p_.size()); }
	double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
	const std::vector<double>& probabilities() const noexcept { return p_; }

private:
	std::vector<double> p_;
};

double biased_expectation(const BooleanFunction& f, const BiasedMeasure& mu);
double biased_variance(const BooleanFunction& f, const BiasedMeasure& mu);
// E_p[Var_p[f | x_{-i}]]
double biased_influence(const BooleanFunction& f, const BiasedMeasure& mu, int i);

// f(x) <= f(y) whenever x <= y coordinatewise
bool is_monotone(const BooleanFunction& f);

inline constexpr double kRussoStep = 1e-5;

struct RussoCheck {
	double derivative = 0.0;     // central difference of P_p[f = 1] at 1/2
	double influence_sum = 0.0;  // sum of pivot probabilities
	bool ok = false;
};

// f is pm1 or 01; "f = 1" means the +1 / 1 value
RussoCheck russo_derivative_check(const BooleanFunction& f);

struct CoalitionTrace {
	std::vector<int> chosen;          // coordinates fixed to +1, in order
	std::vector<double> means;        // E[f | fixed], starting with E f
	std::vector<double> gains;
	std::vector<double> variances;    // Var of the restricted function before each step
	bool nondecreasing = true;
	bool step_bound_ok = true;        // each gain >= Var / (4 n)
};

// conditions the current most influential free coordinate to +1, budget times
CoalitionTrace greedy_coalition(const BooleanFunction& f, int budget);

} // namespace qsc
