#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/boolean/function.hpp"

namespace qsc {

struct JuryPoint {
	int n = 0;
	double probability = 0.0;
	// exact value as "num/den"
	std::string exact;
};

struct JuryCurve {
	std::string p;
	std::vector<JuryPoint> points;
	// compared in exact arithmetic, in the order given
	bool strictly_increasing = true;
};

// P[Bin(n, p) > n/2] for each n. p is a decimal ("0.6") or a fraction
// ("3/5") and is used exactly.
JuryCurve jury_curve(std::string_view p, const std::vector<int>& ns);

struct NeymanPearsonReport {
	int n = 0;
	double p = 0.0;
	double best = 0.0;
	double majority_value = 0.0;
	std::uint64_t functions = 0;
	// truth tables (bit x set when f(x) = +1) attaining the maximum
	std::vector<std::uint64_t> maximizers;
	// every maximizer is +1 where more signals are +1 and -1 where fewer are
	bool sign_rule = true;
	// for odd n, majority is the only maximizer
	bool majority_unique = false;
};
// s uniform in {+,-}, each x_i = s with probability p independently;
// maximizes P[f(x) = s] over all 2^(2^n) functions. n <= 4.
NeymanPearsonReport neyman_pearson_exhaustive(int n, double p);

struct KklDiagnostic {
	int n = 0;
	double min_influence = 0.0;
	double variance = 0.0;
	// min_i I_i n / (Var ln n)
	double ratio = 0.0;
};
KklDiagnostic kkl_diagnostic(const BooleanFunction& f);
// same from an influence vector and a variance
KklDiagnostic kkl_diagnostic(const std::vector<double>& influences, double variance);

struct TribesCheck {
	int r = 0;
	int m = 0;
	double min_influence = 0.0;
	double max_influence = 0.0;
	double closed_form = 0.0;
	double max_abs_error = 0.0;
	bool matches = false;
	KklDiagnostic kkl;
};
// m = 2^r tribes of width r; dense tables up to n = 24, the block-product
// evaluator beyond
TribesCheck tribes_check(int r);

} // namespace qsc
