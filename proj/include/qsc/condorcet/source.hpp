#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/function.hpp"

namespace qsc {

// One voter's ranking of {a,b,c} as the sign triple
// (x: a>b, y: b>c, z: c>a). Atom order: abc, acb, bac, bca, cab, cba.
struct CondorcetAtoms {
	static constexpr std::array<int, 6> x = {1, 1, -1, -1, 1, -1};
	static constexpr std::array<int, 6> y = {1, -1, 1, 1, -1, -1};
	static constexpr std::array<int, 6> z = {-1, -1, -1, 1, 1, 1};
};

inline constexpr int kMaxExhaustiveVoters = 11;
inline constexpr double kCondorcetRho = -1.0 / 3.0;

enum class ParadoxMode { Fourier, Exhaustive, MonteCarlo };
ParadoxMode paradox_mode_from_string(const std::string& s);

// P[f(x) = g(y) = h(z)] under the uniform source on the six atoms per voter.
// f, g, h are pm1 (01 inputs are converted).
double paradox_probability_fourier(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h);
double paradox_probability_exhaustive(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h,
	int threads = 0);
Estimate paradox_probability_mc(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h,
	std::uint64_t samples, std::uint64_t seed, int threads = 0);

// Streaming form for arities beyond dense tables: each rule sees the
// +-1 votes on its pair.
using VoteRule = std::function<int(std::span<const std::int8_t>)>;
Estimate paradox_probability_mc(int n, const VoteRule& f, const VoteRule& g, const VoteRule& h, std::uint64_t samples,
	std::uint64_t seed, int threads = 0);
int majority_vote(std::span<const std::int8_t> votes);

// dispatches on mode; Monte Carlo returns the estimate only
double paradox_probability(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h, ParadoxMode mode,
	std::uint64_t samples = 0, std::uint64_t seed = 0, int threads = 0);

// exact when n <= 8, otherwise through the Fourier identity
double paradox_probability_exact(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h);

} // namespace qsc
