#include "qsc/manip/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qsc/rng.hpp"

namespace qsc {

namespace {

// moves the entry at position from up to position to, recording each step
void bubble_up(const RankingTables& t, Ranking& cur, int from, int to, std::vector<std::uint32_t>& path)
{
	for (int p = from; p > to; --p) {
		std::swap(cur[static_cast<std::size_t>(p - 1)], cur[static_cast<std::size_t>(p)]);
		path.push_back(t.index_of(cur));
	}
}

int find(const Ranking& r, int k, int a)
{
	for (int p = 0; p < k; ++p)
		if (r[static_cast<std::size_t>(p)] == a)
			return p;
	return -1;
}

std::uint64_t ipow(std::uint64_t b, int e)
{
	std::uint64_t v = 1;
	for (int i = 0; i < e; ++i)
		v *= b;
	return v;
}

} // namespace

std::vector<std::uint32_t> canonical_path(const RankingTables& t, std::uint32_t sigma, std::uint32_t pi)
{
	const int k = t.k();
	Ranking cur = t.order(sigma);
	const Ranking& target = t.order(pi);
	std::vector<std::uint32_t> path{sigma};
	for (int p = 0; p < k; ++p)
		bubble_up(t, cur, find(cur, k, target[static_cast<std::size_t>(p)]), p, path);
	return path;
}

std::vector<std::uint32_t> canonical_path_fixed_pair(const RankingTables& t, std::uint32_t sigma, std::uint32_t pi, int a, int b)
{
	if (!t.prefers(sigma, a, b) || !t.prefers(pi, a, b))
		throw std::invalid_argument("both rankings must place a above b");
	const int k = t.k();
	Ranking cur = t.order(sigma);
	const Ranking& target = t.order(pi);
	std::vector<std::uint32_t> path{sigma};
	int slot = 0;
	for (int p = 0; p < k; ++p) {
		const int e = target[static_cast<std::size_t>(p)];
		if (e == a || e == b)
			continue;
		bubble_up(t, cur, find(cur, k, e), slot++, path);
	}
	// a and b now fill the last two positions, a first
	bubble_up(t, cur, k - 2, t.position(pi, a), path);
	bubble_up(t, cur, k - 1, t.position(pi, b), path);
	return path;
}

CongestionReport congestion_census(int k, int variant)
{
	if (k < 2 || k > 6)
		throw std::invalid_argument("congestion census needs 2 <= k <= 6");
	if (variant != 1 && variant != 2)
		throw std::invalid_argument("variant must be 1 or 2");
	const RankingTables& t = ranking_tables(k);
	const std::uint32_t m = t.count();
	CongestionReport rep;
	rep.k = k;
	rep.variant = variant;
	const double kf = static_cast<double>(factorial(k));
	if (variant == 1) {
		rep.vertex_bound = k * k * kf / 2.0;
		rep.length_bound = k * (k - 1) / 2.0;
	} else {
		rep.vertex_bound = std::pow(k, 4) * kf;
		rep.length_bound = (k + 4) * (k - 1) / 2.0;
	}
	std::vector<std::uint64_t> vertex(m, 0);
	std::vector<std::uint64_t> edge(static_cast<std::size_t>(m) * static_cast<std::size_t>(k - 1), 0);
	for (std::uint32_t s = 0; s < m; ++s)
		for (std::uint32_t p = 0; p < m; ++p) {
			if (variant == 2 && (!t.prefers(s, 0, 1) || !t.prefers(p, 0, 1)))
				continue;
			const auto path = variant == 1 ? canonical_path(t, s, p) : canonical_path_fixed_pair(t, s, p, 0, 1);
			if (path.back() != p)
				throw std::logic_error("canonical path does not end at its target");
			++rep.pairs;
			rep.max_length = std::max(rep.max_length, path.size() - 1);
			for (std::size_t j = 0; j < path.size(); ++j) {
				++vertex[path[j]];
				if (variant == 2 && !t.prefers(path[j], 0, 1))
					rep.order_kept = false;
				if (j == 0)
					continue;
				const std::uint32_t u = std::min(path[j - 1], path[j]);
				const std::uint32_t v = std::max(path[j - 1], path[j]);
				int pos = -1;
				for (int q = 0; q + 1 < k && pos < 0; ++q)
					if (t.swap_adjacent(u, q) == v)
						pos = q;
				++edge[static_cast<std::size_t>(u) * static_cast<std::size_t>(k - 1) + static_cast<std::size_t>(pos)];
			}
		}
	rep.max_vertex = *std::max_element(vertex.begin(), vertex.end());
	rep.max_edge = edge.empty() ? 0 : *std::max_element(edge.begin(), edge.end());
	rep.ok = static_cast<double>(rep.max_vertex) <= rep.vertex_bound && static_cast<double>(rep.max_length) <= rep.length_bound
		&& rep.order_kept;
	return rep;
}

IsoperimetryResult product_complete_graph_isoperimetry(int ell, int n, const std::vector<bool>& in_a)
{
	if (ell < 2 || n < 1)
		throw std::invalid_argument("need ell >= 2 and n >= 1");
	const std::uint64_t total = ipow(static_cast<std::uint64_t>(ell), n);
	if (total > 1'000'000)
		throw std::length_error("ell^n exceeds 10^6 vertices");
	if (in_a.size() != total)
		throw std::invalid_argument("membership vector must have ell^n entries");
	IsoperimetryResult r;
	for (std::uint64_t v = 0; v < total; ++v) {
		if (!in_a[v])
			continue;
		++r.size;
		std::uint64_t place = 1;
		for (int c = 0; c < n; ++c, place *= static_cast<std::uint64_t>(ell)) {
			const std::uint64_t digit = (v / place) % static_cast<std::uint64_t>(ell);
			const std::uint64_t rest = v - digit * place;
			for (std::uint64_t d = 0; d < static_cast<std::uint64_t>(ell); ++d)
				if (d != digit && !in_a[rest + d * place])
					++r.boundary;
		}
	}
	r.applicable = r.size * static_cast<std::uint64_t>(ell) <= static_cast<std::uint64_t>(ell - 1) * total;
	r.ok = !r.applicable || r.boundary >= r.size;
	return r;
}

std::vector<bool> random_vertex_subset(int ell, int n, std::uint64_t size, std::uint64_t seed)
{
	const std::uint64_t total = ipow(static_cast<std::uint64_t>(ell), n);
	if (size > total)
		throw std::invalid_argument("subset larger than the vertex set");
	std::vector<std::uint64_t> idx(total);
	std::iota(idx.begin(), idx.end(), std::uint64_t{0});
	SplitMix64 rng = stream(seed, 0);
	std::vector<bool> in(total, false);
	for (std::uint64_t j = 0; j < size; ++j) {
		std::swap(idx[j], idx[j + rng.below(total - j)]);
		in[idx[j]] = true;
	}
	return in;
}

} // namespace qsc
