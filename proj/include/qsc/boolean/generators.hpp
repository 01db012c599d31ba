#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/boolean/function.hpp"

namespace qsc {

// All generators return pm1 functions; coordinates are 0-based here and
// 1-based inside spec strings.
BooleanFunction dictator(int n, int i, int sign = 1);
BooleanFunction majority(int n);
BooleanFunction parity(int n);
// OR of m disjoint ANDs of width r (+1 wins), n = r m
BooleanFunction tribes(int r, int m);
// majority of r block majorities, n = r^2, r odd
BooleanFunction electoral_college(int r);
// h levels of maj_r, n = r^h
BooleanFunction recursive_majority(int r, int h);
BooleanFunction and_function(int n);
BooleanFunction or_function(int n);
BooleanFunction constant_function(int n, int value);
// x_1 * sign(x_2 + ... + x_n), a tie broken by x_2
BooleanFunction dictator_times_majority(int n);
BooleanFunction random_function(int n, std::uint64_t seed);
BooleanFunction random_balanced_function(int n, std::uint64_t seed);

// Zoo lookup, e.g. "tribes:r=2,m=4", "majority:n=5", "dictator:n=4,i=2".
BooleanFunction make_function(std::string_view spec);
// spec strings of named zoo members with arity <= max_n
std::vector<std::string> function_zoo(int max_n);

// Pivot probabilities of outer(inner(block_1), ..., inner(block_m)) on
// disjoint blocks, without tabulating the composition: a coordinate is
// pivotal iff it is pivotal for its block and the block is pivotal for the
// outer function under the biased law of block outputs.
std::vector<double> composed_pivot_probabilities(const BooleanFunction& outer, const BooleanFunction& inner);
// 2^{1-r} (1 - 2^{-r})^{m-1}
double tribes_influence_closed_form(int r, int m);

} // namespace qsc
