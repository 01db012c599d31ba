#include "qsc/dynamics/graph.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qsc/rng.hpp"
#include "qsc/spec_string.hpp"

namespace qsc {

namespace {

constexpr int kRegularAttempts = 10000;

} // namespace

OpinionGraph::OpinionGraph(int vertices, const std::vector<std::pair<int, int>>& edges, bool require_odd)
{
	if (vertices < 1 || vertices > kMaxGraphVertices)
		throw std::invalid_argument("vertex count must be in [1, 10^6]");
	std::vector<std::pair<int, int>> arcs;
	arcs.reserve(edges.size() * 2);
	for (auto [u, v] : edges) {
		if (u < 0 || v < 0 || u >= vertices || v >= vertices)
			throw std::invalid_argument("edge endpoint out of range");
		if (u == v)
			throw std::invalid_argument("self-loops are not allowed");
		arcs.emplace_back(u, v);
		arcs.emplace_back(v, u);
	}
	std::sort(arcs.begin(), arcs.end());
	if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
		throw std::invalid_argument("repeated edge");
	offsets_.assign(static_cast<std::size_t>(vertices) + 1, 0);
	adjacency_.reserve(arcs.size());
	for (auto [u, v] : arcs) {
		++offsets_[static_cast<std::size_t>(u) + 1];
		adjacency_.push_back(v);
	}
	for (std::size_t i = 1; i < offsets_.size(); ++i)
		offsets_[i] += offsets_[i - 1];
	if (require_odd && !all_degrees_odd())
		throw std::invalid_argument("every vertex needs odd degree");
}

bool OpinionGraph::all_degrees_odd() const
{
	for (int v = 0; v < vertices(); ++v)
		if (degree(v) % 2 == 0)
			return false;
	return true;
}

std::vector<std::pair<int, int>> OpinionGraph::edge_list() const
{
	std::vector<std::pair<int, int>> e;
	for (int u = 0; u < vertices(); ++u)
		for (int v : neighbors(u))
			if (u < v)
				e.emplace_back(u, v);
	return e;
}

OpinionGraph random_regular_graph(int d, int n, std::uint64_t seed)
{
	if (d < 1 || n <= d || (static_cast<long long>(d) * n) % 2)
		throw std::invalid_argument("random regular graph needs 1 <= d < n and d n even");
	std::vector<int> stubs;
	stubs.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(n));
	for (int attempt = 0; attempt < kRegularAttempts; ++attempt) {
		stubs.clear();
		for (int v = 0; v < n; ++v)
			stubs.insert(stubs.end(), static_cast<std::size_t>(d), v);
		SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(attempt));
		for (std::size_t i = stubs.size() - 1; i > 0; --i)
			std::swap(stubs[i], stubs[rng.below(i + 1)]);
		std::vector<std::pair<int, int>> edges;
		bool simple = true;
		for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
			const int u = std::min(stubs[i], stubs[i + 1]);
			const int v = std::max(stubs[i], stubs[i + 1]);
			simple = u != v;
			edges.emplace_back(u, v);
		}
		if (!simple)
			continue;
		std::sort(edges.begin(), edges.end());
		if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
			continue;
		return OpinionGraph(n, edges, d % 2 == 1);
	}
	throw std::runtime_error("configuration model kept producing multigraphs");
}

OpinionGraph complete_graph(int n)
{
	std::vector<std::pair<int, int>> e;
	for (int u = 0; u < n; ++u)
		for (int v = u + 1; v < n; ++v)
			e.emplace_back(u, v);
	return OpinionGraph(n, e, (n - 1) % 2 == 1);
}

OpinionGraph complete_bipartite_graph(int a, int b)
{
	std::vector<std::pair<int, int>> e;
	for (int u = 0; u < a; ++u)
		for (int v = 0; v < b; ++v)
			e.emplace_back(u, a + v);
	return OpinionGraph(a + b, e, a % 2 == 1 && b % 2 == 1);
}

OpinionGraph torus_with_antipodal_matching(int side)
{
	if (side < 4 || side % 2)
		throw std::invalid_argument("torus side must be even and >= 4");
	auto id = [side](int x, int y) { return ((x % side + side) % side) * side + (y % side + side) % side; };
	std::vector<std::pair<int, int>> e;
	for (int x = 0; x < side; ++x)
		for (int y = 0; y < side; ++y) {
			e.emplace_back(id(x, y), id(x + 1, y));
			e.emplace_back(id(x, y), id(x, y + 1));
			const int u = id(x, y);
			const int v = id(x + side / 2, y + side / 2);
			if (u < v)
				e.emplace_back(u, v);
		}
	return OpinionGraph(side * side, e, true);
}

OpinionGraph make_graph(std::string_view spec)
{
	const SpecString s = SpecString::parse(spec);
	auto i = [&](const char* key) { return static_cast<int>(s.get_int(key)); };
	if (s.name == "random_regular") {
		s.expect_only({"d", "n", "seed"});
		return random_regular_graph(i("d"), i("n"), static_cast<std::uint64_t>(s.get_int("seed", 1)));
	}
	if (s.name == "complete") {
		s.expect_only({"n"});
		return complete_graph(i("n"));
	}
	if (s.name == "complete_bipartite") {
		s.expect_only({"a", "b"});
		return complete_bipartite_graph(i("a"), i("b"));
	}
	if (s.name == "torus") {
		s.expect_only({"side"});
		return torus_with_antipodal_matching(i("side"));
	}
	throw std::invalid_argument("unknown graph generator '" + s.name + "'");
}

OpinionGraph read_edge_list(std::istream& is, bool require_odd)
{
	std::vector<std::pair<int, int>> e;
	int declared = -1;
	int largest = -1;
	std::string line;
	while (std::getline(is, line)) {
		const auto hash = line.find('#');
		if (hash != std::string::npos) {
			std::istringstream c(line.substr(hash + 1));
			std::string word;
			int count = 0;
			if (c >> word >> count && word == "vertices")
				declared = count;
			line.erase(hash);
		}
		std::istringstream ls(line);
		int u = 0;
		int v = 0;
		if (!(ls >> u))
			continue;
		if (!(ls >> v))
			throw std::invalid_argument("edge line needs two vertices: " + line);
		e.emplace_back(u, v);
		largest = std::max({largest, u, v});
	}
	return OpinionGraph(declared > 0 ? declared : largest + 1, e, require_odd);
}

void write_edge_list(std::ostream& os, const OpinionGraph& g)
{
	os << "# vertices " << g.vertices() << '\n';
	for (auto [u, v] : g.edge_list())
		os << u << ' ' << v << '\n';
}

OpinionGraph load_graph(const std::string& spec_or_path, bool require_odd)
{
	if (std::filesystem::exists(spec_or_path)) {
		std::ifstream in(spec_or_path);
		return read_edge_list(in, require_odd);
	}
	return make_graph(spec_or_path);
}

} // namespace qsc
