#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qsc/boolean/function.hpp"

namespace qsc {

// IIA constitution on k alternatives and n voters: for a < b, pairwise(a,b)
// maps x^{a>b} (bit v set when voter v ranks a above b) to +1 when society
// ranks a above b. f^{b>a} = -f^{a>b} is implied.
class Constitution {
public:
	Constitution(int k, int n);

	int k() const noexcept { return k_; }
	int n() const noexcept { return n_; }
	void set(int a, int b, BooleanFunction f);
	// f^{a>b} for any ordered pair, negated when a > b
	BooleanFunction pairwise(int a, int b) const;
	// +1 when society ranks a above b on votes x^{a>b}
	int prefers(int a, int b, std::uint64_t x_ab) const;

	static Constitution uniform(int k, int n, const BooleanFunction& f);

private:
	int k_;
	int n_;
	std::vector<BooleanFunction> table_; // a < b, row-major over pairs
	std::size_t slot(int a, int b) const;
};

struct Block {
	std::vector<int> alternatives;
	// blocks of size >= 3: voter and sign with F_A = sign * voter's ranking
	int dictator = -1;
	int sign = 1;
};

struct ConstitutionReport {
	double p_nontransitive = 0.0;
	double std_error = 0.0;    // 0 when exhaustive
	bool exhaustive = true;
	bool member = false;       // satisfies the partition characterisation
	std::vector<Block> partition; // top block first, when member
};

inline constexpr double kConstitutionBudget = 1e7;

// exhaustive over (k!)^n profiles when within budget, otherwise Monte Carlo
ConstitutionReport constitution_check(const Constitution& c, std::uint64_t samples = 200000, std::uint64_t seed = 1,
	int threads = 0);

// Builds a member of the transitive IIA class from an ordered partition:
// blocks of size >= 3 follow voter dictators[s] (with signs[s]), blocks of
// size 2 use pair_rule (non-constant).
Constitution constitution_from_partition(int k, int n, const std::vector<std::vector<int>>& blocks,
	const std::vector<int>& dictators, const std::vector<int>& signs, const BooleanFunction& pair_rule);

// (f^{a>b}, f^{b>c}, f^{c>a}) for the Arrow classifier
std::array<BooleanFunction, 3> restrict_to_triple(const Constitution& c, int a, int b, int cc);

} // namespace qsc
