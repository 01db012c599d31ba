#pragma once

#include <cstdint>
#include <vector>

#include "qsc/boolean/fourier.hpp"
#include "qsc/boolean/function.hpp"

namespace qsc {

inline constexpr int kDefaultResilienceMaxOrder = 6;
inline constexpr double kResilienceBudget = 5e8;

struct ResilienceVerdict {
	bool resilient = true;
	double worst_deviation = 0.0;
	// worst (S, z): z holds the values on S, set bit = +1
	std::uint64_t witness_set = 0;
	std::uint64_t witness_values = 0;
};

// max over 0 < |S| <= r and z of |E[f | x_S = z] - E f|, compared with alpha
ResilienceVerdict is_resilient(const BooleanFunction& f, int r, double alpha, int max_order = kDefaultResilienceMaxOrder);
// max_{0<|S|<=r} |fhat(S)| <= 2^-r alpha; sufficient, never necessary
bool resilience_from_fourier(const FourierExpansion& c, int r, double alpha);

struct BoundCheck {
	double lhs = 0.0;
	double bound = 0.0;
	bool ok = false;
};

// sum_i I_i(T_rho f) against 1/(1-|rho|)
BoundCheck noisy_influence_sum_bound(const BooleanFunction& f, double rho);

struct MartingaleDeltaReport {
	std::vector<int> order;             // coordinate integrated at each step
	std::vector<double> cube_increments;   // E|f_i - f_{i-1}|^3
	std::vector<double> square_increments; // E|f_i - f_{i-1}|^2
	std::vector<double> delta;             // partial sums Delta_m
	std::vector<double> influence;         // I of the coordinate integrated at step i
	double variance = 0.0;
	bool orthogonality_ok = false;      // sum of squares == Var f
	bool increment_bound_ok = false;    // each square increment <= influence
};

// f_0 = f, f_i integrates out order[0..i-1]; empty order means 0..n-1
MartingaleDeltaReport martingale_delta(const BooleanFunction& f, std::vector<int> order = {});

double lp_norm(const BooleanFunction& f, double p);

struct NormComparison {
	double lhs = 0.0;
	double rhs = 0.0;
	bool ok = false;
};

// ||T_rho f||_p <= ||f||_q with 1 <= q <= p, rho^2 <= (q-1)/(p-1)
NormComparison hypercontractivity_check(const BooleanFunction& f, double rho, double p, double q);
// ||T_rho f||_q >= ||f||_p with 0 < q < p < 1, rho^2 <= (1-p)/(1-q), f > 0
NormComparison reverse_hypercontractivity_check(const BooleanFunction& f, double rho, double p, double q);

struct FourthMoment {
	double fourth = 0.0;   // E[q^4]
	double second = 0.0;   // E[q^2]
	double bound = 0.0;    // 81 E[q^2]^2
	bool ok = false;
};

// q(x) = sum_{i<j} coeffs[i][j] x_i x_j, entries on or below the diagonal ignored
FourthMoment degree2_fourth_moment_check(const std::vector<std::vector<double>>& coeffs);

} // namespace qsc
