#include "qsc/manip/nonmanip.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "qsc/manip/census.hpp"
#include "qsc/parallel.hpp"

namespace qsc {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS, boost::no_property,
	boost::property<boost::edge_capacity_t, long long,
		boost::property<boost::edge_residual_capacity_t, long long, boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;

void add_arc(FlowGraph& g, std::size_t u, std::size_t v, long long cap)
{
	auto cap_map = boost::get(boost::edge_capacity, g);
	auto rev_map = boost::get(boost::edge_reverse, g);
	const auto e = boost::add_edge(u, v, g).first;
	const auto r = boost::add_edge(v, u, g).first;
	cap_map[e] = cap;
	cap_map[r] = 0;
	rev_map[e] = r;
	rev_map[r] = e;
}

int cube_dim(std::size_t size)
{
	if (size == 0 || !std::has_single_bit(size))
		throw std::invalid_argument("cube table size must be a power of two");
	return std::countr_zero(size);
}

// per a-vs-b fiber, how many profiles f sends to a and to b
struct FiberWeights {
	std::vector<long long> wa;
	std::vector<long long> wb;
	std::uint64_t total = 0;
};

FiberWeights fiber_weights(const SocialChoiceFunction& f, int a, int b, int threads)
{
	const int k = f.k();
	const int n = f.n();
	const RankingTables& t = ranking_tables(k);
	const auto& tab = f.table();
	const std::size_t fibers = std::size_t{1} << n;
	constexpr std::uint64_t kBlock = 1u << 14;
	const std::uint64_t total = tab.size();
	std::vector<std::vector<long long>> part((total + kBlock - 1) / kBlock);
	parallel_for(
		part.size(),
		[&](std::size_t blk) {
			auto& w = part[blk];
			w.assign(2 * fibers, 0);
			enumerate_profiles(k, n, blk * kBlock, std::min(total, (blk + 1) * kBlock), [&](std::uint64_t idx, const Profile& p) {
				const int v = tab[idx];
				if (v != a && v != b)
					return;
				std::size_t z = 0;
				for (int i = 0; i < n; ++i)
					if (t.prefers(p[static_cast<std::size_t>(i)], a, b))
						z |= std::size_t{1} << i;
				++w[(v == a ? 0 : fibers) + z];
			});
		},
		threads);
	FiberWeights fw;
	fw.wa.assign(fibers, 0);
	fw.wb.assign(fibers, 0);
	fw.total = total;
	for (const auto& w : part)
		for (std::size_t z = 0; z < fibers; ++z) {
			fw.wa[z] += w[z];
			fw.wb[z] += w[fibers + z];
		}
	return fw;
}

double dist_of_assignment(const FiberWeights& fw, const BooleanFunction& h)
{
	long long agree = 0;
	for (std::size_t z = 0; z < fw.wa.size(); ++z)
		agree += h[z] > 0.5 ? fw.wa[z] : fw.wb[z];
	return 1.0 - static_cast<double>(agree) / static_cast<double>(fw.total);
}

} // namespace

long long max_gain_upset(const std::vector<long long>& gain, std::vector<std::uint8_t>* best)
{
	const int n = cube_dim(gain.size());
	const std::size_t size = gain.size();
	const std::size_t src = size;
	const std::size_t snk = size + 1;
	long long positive = 0;
	long long big = 1;
	for (auto g : gain) {
		if (g > 0)
			positive += g;
		big += std::abs(g);
	}
	FlowGraph g(size + 2);
	for (std::size_t z = 0; z < size; ++z) {
		if (gain[z] > 0)
			add_arc(g, src, z, gain[z]);
		else if (gain[z] < 0)
			add_arc(g, z, snk, -gain[z]);
		// choosing z forces every point above it
		for (int i = 0; i < n; ++i)
			if (!((z >> i) & 1u))
				add_arc(g, z, z | (std::size_t{1} << i), big);
	}
	const long long flow = boost::push_relabel_max_flow(g, src, snk);
	if (best) {
		// source side of the minimum cut: reachable through residual arcs
		auto res = boost::get(boost::edge_residual_capacity, g);
		std::vector<std::uint8_t> seen(size + 2, 0);
		std::vector<std::size_t> stack{src};
		seen[src] = 1;
		while (!stack.empty()) {
			const std::size_t u = stack.back();
			stack.pop_back();
			for (auto [e, end] = boost::out_edges(u, g); e != end; ++e) {
				const std::size_t v = boost::target(*e, g);
				if (!seen[v] && res[*e] > 0) {
					seen[v] = 1;
					stack.push_back(v);
				}
			}
		}
		best->assign(seen.begin(), seen.begin() + static_cast<std::ptrdiff_t>(size));
	}
	return positive - flow;
}

double boolean_dist_to_monotone(const BooleanFunction& h)
{
	const BooleanFunction z01 = h.codomain() == Codomain::PlusMinusOne ? h.to_zero_one() : h;
	std::vector<long long> gain(z01.size());
	long long zeros = 0;
	for (std::size_t x = 0; x < z01.size(); ++x) {
		const bool one = z01[x] > 0.5;
		gain[x] = one ? 1 : -1;
		zeros += one ? 0 : 1;
	}
	const long long agree = max_gain_upset(gain) + zeros;
	return static_cast<double>(static_cast<long long>(z01.size()) - agree) / static_cast<double>(z01.size());
}

BooleanFunction monotonize_by_sorting(const BooleanFunction& h)
{
	const BooleanFunction z01 = h.codomain() == Codomain::PlusMinusOne ? h.to_zero_one() : h;
	std::vector<double> v = z01.values();
	const int n = z01.n();
	for (bool changed = true; changed;) {
		changed = false;
		for (int i = 0; i < n; ++i) {
			const std::size_t bit = std::size_t{1} << i;
			for (std::size_t x = 0; x < v.size(); ++x)
				if (!(x & bit) && v[x] > v[x | bit]) {
					std::swap(v[x], v[x | bit]);
					changed = true;
				}
		}
	}
	return BooleanFunction(n, std::move(v), Codomain::ZeroOne);
}

double monotonicity_violation_rate(const BooleanFunction& h)
{
	const int n = h.n();
	if (n == 0)
		return 0.0;
	std::uint64_t bad = 0;
	for (int i = 0; i < n; ++i) {
		const std::size_t bit = std::size_t{1} << i;
		for (std::size_t x = 0; x < h.size(); ++x)
			if (!(x & bit) && h[x] > h[x | bit])
				++bad;
	}
	return static_cast<double>(bad) / (static_cast<double>(n) * static_cast<double>(h.size() / 2));
}

TwoValuedFit two_valued_fit(SocialChoiceFunction& f, int a, int b, int threads)
{
	if (a == b || a < 0 || b < 0 || a >= f.k() || b >= f.k())
		throw std::invalid_argument("two-valued fit needs two distinct alternatives");
	if (f.n() > 20)
		throw std::length_error("two-valued fit builds a cube of 2^n fibers; n <= 20");
	profile_count(f.k(), f.n(), kExhaustiveProfileBudget);
	f.tabulate(threads);
	const FiberWeights fw = fiber_weights(f, a, b, threads);
	const std::size_t fibers = fw.wa.size();
	TwoValuedFit fit;
	fit.a = a;
	fit.b = b;

	std::vector<long long> gain(fibers);
	long long base = 0;
	for (std::size_t z = 0; z < fibers; ++z) {
		gain[z] = fw.wa[z] - fw.wb[z];
		base += fw.wb[z];
	}
	const long long agree = base + max_gain_upset(gain);
	fit.dist_exact = 1.0 - static_cast<double>(agree) / static_cast<double>(fw.total);

	std::vector<double> hv(fibers);
	for (std::size_t z = 0; z < fibers; ++z)
		hv[z] = fw.wa[z] >= fw.wb[z] ? 1.0 : 0.0;
	fit.h = BooleanFunction(f.n(), std::move(hv), Codomain::ZeroOne);
	fit.dist_fiber_majority = dist_of_assignment(fw, fit.h);
	fit.dist_monotonized = dist_of_assignment(fw, monotonize_by_sorting(fit.h));
	fit.h_dist_to_monotone = boolean_dist_to_monotone(fit.h);
	fit.h_violation_rate = monotonicity_violation_rate(fit.h);
	fit.violation_bound_ok = fit.h_violation_rate >= fit.h_dist_to_monotone / f.n() - 1e-12;
	return fit;
}

NonmanipDistance dist_to_nonmanip(SocialChoiceFunction& f, int threads)
{
	const int k = f.k();
	const int n = f.n();
	if (k < 2)
		throw std::invalid_argument("need k >= 2");
	const std::uint64_t total = profile_count(k, n, kExhaustiveProfileBudget);
	f.tabulate(threads);
	const auto& tab = f.table();
	const RankingTables& t = ranking_tables(k);
	const std::uint64_t base = t.count();

	// cnt[i][r][a] = #{sigma : sigma_i = r, f(sigma) = a}
	std::vector<std::uint64_t> cnt(static_cast<std::size_t>(n) * base * static_cast<std::size_t>(k), 0);
	enumerate_profiles(k, n, 0, total, [&](std::uint64_t idx, const Profile& p) {
		for (int i = 0; i < n; ++i)
			++cnt[(static_cast<std::size_t>(i) * base + p[static_cast<std::size_t>(i)]) * static_cast<std::size_t>(k) + tab[idx]];
	});
	NonmanipDistance d;
	std::uint64_t best_agree = 0;
	for (int i = 0; i < n; ++i)
		for (std::uint32_t h = 1; h < (1u << k); ++h) {
			std::uint64_t agree = 0;
			for (std::uint32_t r = 0; r < base; ++r) {
				const Ranking& o = t.order(r);
				int top = 0;
				for (int j = 0; j < k; ++j)
					if ((h >> o[static_cast<std::size_t>(j)]) & 1u) {
						top = o[static_cast<std::size_t>(j)];
						break;
					}
				agree += cnt[(static_cast<std::size_t>(i) * base + r) * static_cast<std::size_t>(k) + static_cast<std::size_t>(top)];
			}
			if (agree > best_agree) {
				best_agree = agree;
				d.top_h_voter = i;
				d.top_h_mask = h;
			}
		}
	d.top_h = 1.0 - static_cast<double>(best_agree) / static_cast<double>(total);

	bool first = true;
	for (int a = 0; a < k; ++a)
		for (int b = a + 1; b < k; ++b) {
			TwoValuedFit fit = two_valued_fit(f, a, b, threads);
			if (first || fit.dist_exact < d.two_valued.dist_exact)
				d.two_valued = fit;
			d.two_valued_upper = first ? fit.dist_monotonized : std::min(d.two_valued_upper, fit.dist_monotonized);
			first = false;
		}
	d.two_valued_lower = d.two_valued.dist_exact;
	d.combined = std::min(d.top_h, d.two_valued_lower);
	d.combined_upper = std::min(d.top_h, d.two_valued_upper);
	return d;
}

GsGate quantitative_gs_gate(SocialChoiceFunction& f, int threads)
{
	GsGate g;
	g.epsilon = dist_to_nonmanip(f, threads).combined;
	const CensusReport c = manipulation_census(f, 4, CensusMode::Exhaustive, 0, 0, threads);
	g.m4_fraction = c.p_r[4];
	g.bound = std::pow(g.epsilon, 5) / (1e9 * std::pow(f.n(), 7) * std::pow(f.k(), 46));
	g.vacuous = g.epsilon <= 0.0;
	g.ok = g.m4_fraction >= g.bound;
	return g;
}

} // namespace qsc
