#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsc {

inline constexpr int kMaxGraphVertices = 1'000'000;

// Simple undirected graph in CSR form. Self-loops and repeated edges are
// rejected; with require_odd every degree must be odd so majority votes
// over neighbourhoods never tie.
class OpinionGraph {
public:
	OpinionGraph() = default;
	OpinionGraph(int vertices, const std::vector<std::pair<int, int>>& edges, bool require_odd = true);

	int vertices() const noexcept { return static_cast<int>(offsets_.empty() ? 0 : offsets_.size() - 1); }
	std::size_t edges() const noexcept { return adjacency_.size() / 2; }
	int degree(int v) const { return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)]; }
	std::span<const int> neighbors(int v) const
	{
		return {adjacency_.data() + offsets_[static_cast<std::size_t>(v)], static_cast<std::size_t>(degree(v))};
	}
	bool all_degrees_odd() const;
	std::vector<std::pair<int, int>> edge_list() const;

private:
	std::vector<int> offsets_;
	std::vector<int> adjacency_;
};

// configuration model, resampled until simple; d n must be even
OpinionGraph random_regular_graph(int d, int n, std::uint64_t seed);
OpinionGraph complete_graph(int n);
OpinionGraph complete_bipartite_graph(int a, int b);
// side x side torus plus the matching (x,y) ~ (x+side/2, y+side/2);
// 5-regular, side even and >= 4
OpinionGraph torus_with_antipodal_matching(int side);

// "random_regular:d=3,n=100,seed=7", "complete:n=4",
// "complete_bipartite:a=3,b=3", "torus:side=6"
OpinionGraph make_graph(std::string_view spec);

// "u v" per line, 0-based; '#' starts a comment; the vertex count is one
// more than the largest label unless a "# vertices N" line says otherwise
OpinionGraph read_edge_list(std::istream& is, bool require_odd = true);
void write_edge_list(std::ostream& os, const OpinionGraph& g);
OpinionGraph load_graph(const std::string& spec_or_path, bool require_odd = true);

} // namespace qsc
