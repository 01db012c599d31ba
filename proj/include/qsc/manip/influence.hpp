#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsc/manip/scf.hpp"

namespace qsc {

// Adjacent transpositions [c:d], c < d, in lexicographic pair order.
std::vector<std::pair<int, int>> adjacent_transpositions(int k);
int transposition_index(int c, int d, int k);

// Exact influence tables on the rankings graph. Integer numerators are
// kept so the summation identities can be checked without rounding.
struct RankingInfluences {
	int k = 0;
	int n = 0;
	std::uint64_t profiles = 0;
	// P(f = a)
	std::vector<double> mass;
	// |B_i^{a,b}|: ordered pairs differing only in voter i with f = a then b;
	// [i][a k + b]
	std::vector<std::vector<std::uint64_t>> boundary;
	// |B_i^{a,b;z}| for adjacent transpositions z; [i][z][a k + b]
	std::vector<std::vector<std::vector<std::uint64_t>>> refined_boundary;

	// Inf_i^{a,b} = |B_i^{a,b}| / (k!)^{n+1}
	double inf_ab(int i, int a, int b) const;
	double inf_a(int i, int a) const;
	double inf(int i) const;
	// Inf_i^{a,b;z} = |B_i^{a,b;z}| / (2 (k!)^n)
	double refined(int i, int z, int a, int b) const;
	// Inf_i^{a;z}: outcome a moved by applying z to voter i half the time
	double refined_a(int i, int z, int a) const;
	// sum_a Inf_i^a = Inf_i = sum_{a != b} Inf_i^{a,b}, in integers
	bool consistent() const;
};

RankingInfluences ranking_influences(SocialChoiceFunction& f, int threads = 0);

struct InfluenceBounds {
	// sum_i Inf_i^a >= Var[1_{f=a}] for every a
	bool sum_inf_var = true;
	double sum_inf_var_margin = 0.0;
	// Dist(f, constants) <= (k/2) sum_a Var[1_{f=a}]
	bool const_dist = true;
	double dist_to_constant = 0.0;
	double const_dist_bound = 0.0;
	// sum_{z in T} Inf_i^{a;z} >= Inf_i^a / k^2 for every i, a
	bool refined_sum = true;
	double refined_sum_margin = 0.0;
};
InfluenceBounds influence_bounds(const RankingInfluences& inf);

// fibers of the a-vs-b preference vector
struct FiberCensus {
	int voter = 0;
	int a = 0;
	int b = 0;
	double gamma = 0.0;
	// P(sigma in B_i(z) | sigma in F(z)), indexed by z with bit v set when
	// voter v ranks a above b
	std::vector<double> fraction;
	int large = 0;
	// P(sigma in the union of large fibers' boundary sets)
	double large_mass = 0.0;
	// P(f = a and voter i can move the outcome to b)
	double boundary_mass = 0.0;
};
// large-fiber threshold 1 - gamma uses gamma = eps^3 / (4 n^3 k^9)
double default_fiber_gamma(double eps, int n, int k);
// one entry per voter and ordered pair a != b
std::vector<FiberCensus> fiber_census(SocialChoiceFunction& f, double gamma, int threads = 0);

struct LocalDictatorCensus {
	int voter = 0;
	// triples H as alternative masks, with P(sigma in LD_i^H)
	std::vector<std::uint32_t> triples;
	std::vector<double> ld_h;
	// P(sigma in LD_i(a,b)), [a k + b], symmetric
	std::vector<double> ld_pair;
};
LocalDictatorCensus local_dictator_census(SocialChoiceFunction& f, int voter, int threads = 0);

// For (sigma, pi) with pi = z_i sigma, f(sigma) = a != b = f(pi) and
// sigma_i != [a:b] pi_i, one of sigma, pi must be a 2-manipulation point.
struct BoundaryAudit {
	std::uint64_t pairs = 0;
	std::uint64_t violations = 0;
	std::string first_violation;
	bool ok() const noexcept { return violations == 0; }
};
BoundaryAudit non_manip_boundary_audit(SocialChoiceFunction& f, int threads = 0);

} // namespace qsc
