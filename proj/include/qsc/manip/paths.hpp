#pragma once

#include <cstdint>
#include <vector>

#include "qsc/manip/ranking.hpp"

namespace qsc {

// Bubble paths between rankings; every returned vector starts at sigma,
// ends at pi, and consecutive entries differ by one adjacent swap.
//
// Plain variant: bubble pi's top to the top, then pi's second to the
// second position, and so on.
std::vector<std::uint32_t> canonical_path(const RankingTables& t, std::uint32_t sigma, std::uint32_t pi);
// Variant keeping a above b: place everything except a and b in pi's
// order first, then lift a, then b. Both ends must rank a above b.
std::vector<std::uint32_t> canonical_path_fixed_pair(const RankingTables& t, std::uint32_t sigma, std::uint32_t pi, int a, int b);

struct CongestionReport {
	int k = 0;
	int variant = 1;
	std::uint64_t pairs = 0;
	// max over rankings mu of the number of pairs whose path visits mu
	std::uint64_t max_vertex = 0;
	// max over swap edges of the number of pairs whose path uses it
	std::uint64_t max_edge = 0;
	double vertex_bound = 0.0;
	std::size_t max_length = 0;
	double length_bound = 0.0;
	// variant 2 only: every visited ranking keeps a above b
	bool order_kept = true;
	bool ok = false;
};
// Over all ordered pairs (variant 1) or all pairs ranking a above b
// (variant 2, a = 0, b = 1). Bounds k^2 k!/2 and k^4 k!; lengths at most
// k(k-1)/2 and (k+4)(k-1)/2.
CongestionReport congestion_census(int k, int variant);

struct IsoperimetryResult {
	std::uint64_t boundary = 0;
	std::uint64_t size = 0;
	// |A| <= (1 - 1/ell) ell^n
	bool applicable = false;
	bool ok = false;
};
// Edge boundary of A in the product of n complete graphs on ell vertices;
// vertices are base-ell numbers with coordinate 0 least significant.
IsoperimetryResult product_complete_graph_isoperimetry(int ell, int n, const std::vector<bool>& in_a);
std::vector<bool> random_vertex_subset(int ell, int n, std::uint64_t size, std::uint64_t seed);

} // namespace qsc
