#include "qsc/manip/influence.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qsc/manip/census.hpp"
#include "qsc/parallel.hpp"

namespace qsc {

namespace {

constexpr std::uint64_t kBlock = 1u << 14;

std::uint64_t blocks(std::uint64_t total)
{
	return (total + kBlock - 1) / kBlock;
}

std::uint64_t stride_of(int k, int n, int i)
{
	std::uint64_t s = 1;
	for (int j = n - 1; j > i; --j)
		s *= factorial(k);
	return s;
}

// index of the first profile of context c of voter i (voter i ranks 0)
std::uint64_t context_base(std::uint64_t c, std::uint64_t stride, std::uint64_t base)
{
	return (c / stride) * stride * base + c % stride;
}

std::size_t ab(int a, int b, int k)
{
	return static_cast<std::size_t>(a * k + b);
}

} // namespace

std::vector<std::pair<int, int>> adjacent_transpositions(int k)
{
	std::vector<std::pair<int, int>> t;
	for (int c = 0; c < k; ++c)
		for (int d = c + 1; d < k; ++d)
			t.emplace_back(c, d);
	return t;
}

int transposition_index(int c, int d, int k)
{
	if (c > d)
		std::swap(c, d);
	// pairs before row c, then the offset within the row
	return c * k - c * (c + 1) / 2 + (d - c - 1);
}

double RankingInfluences::inf_ab(int i, int a, int b) const
{
	if (a == b)
		return 0.0;
	return static_cast<double>(boundary[static_cast<std::size_t>(i)][ab(a, b, k)])
		/ (static_cast<double>(profiles) * static_cast<double>(factorial(k)));
}

double RankingInfluences::inf_a(int i, int a) const
{
	double s = 0.0;
	for (int b = 0; b < k; ++b)
		s += inf_ab(i, a, b);
	return s;
}

double RankingInfluences::inf(int i) const
{
	double s = 0.0;
	for (int a = 0; a < k; ++a)
		s += inf_a(i, a);
	return s;
}

double RankingInfluences::refined(int i, int z, int a, int b) const
{
	if (a == b)
		return 0.0;
	return 0.5
		* static_cast<double>(refined_boundary[static_cast<std::size_t>(i)][static_cast<std::size_t>(z)][ab(a, b, k)])
		/ static_cast<double>(profiles);
}

double RankingInfluences::refined_a(int i, int z, int a) const
{
	double s = 0.0;
	for (int b = 0; b < k; ++b)
		s += refined(i, z, a, b);
	return s;
}

bool RankingInfluences::consistent() const
{
	for (int i = 0; i < n; ++i) {
		const auto& bd = boundary[static_cast<std::size_t>(i)];
		std::uint64_t by_pairs = 0;
		std::uint64_t by_outcome = 0;
		for (int a = 0; a < k; ++a) {
			std::uint64_t row = 0;
			for (int b = 0; b < k; ++b)
				if (a != b) {
					row += bd[ab(a, b, k)];
					by_pairs += bd[ab(a, b, k)];
				}
			by_outcome += row;
		}
		// |B_i^{a,b}| = |B_i^{b,a}| since the pair relation is symmetric
		for (int a = 0; a < k; ++a)
			for (int b = 0; b < k; ++b)
				if (bd[ab(a, b, k)] != bd[ab(b, a, k)])
					return false;
		if (by_pairs != by_outcome)
			return false;
	}
	return true;
}

RankingInfluences ranking_influences(SocialChoiceFunction& f, int threads)
{
	const int k = f.k();
	const int n = f.n();
	const std::uint64_t total = profile_count(k, n, kExhaustiveProfileBudget);
	f.tabulate(threads);
	const auto& tab = f.table();
	const RankingTables& t = ranking_tables(k);
	const std::uint64_t base = t.count();
	const std::size_t kk = static_cast<std::size_t>(k * k);
	const std::size_t nz = static_cast<std::size_t>(k * (k - 1) / 2);

	RankingInfluences out;
	out.k = k;
	out.n = n;
	out.profiles = total;
	out.mass.assign(static_cast<std::size_t>(k), 0.0);
	for (auto v : tab)
		out.mass[v] += 1.0;
	for (auto& m : out.mass)
		m /= static_cast<double>(total);

	out.boundary.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(kk, 0));
	out.refined_boundary.assign(static_cast<std::size_t>(n), std::vector<std::vector<std::uint64_t>>(nz, std::vector<std::uint64_t>(kk, 0)));
	for (int i = 0; i < n; ++i) {
		const std::uint64_t stride = stride_of(k, n, i);
		const std::uint64_t contexts = total / base;
		std::vector<std::vector<std::uint64_t>> part(blocks(contexts), std::vector<std::uint64_t>(kk, 0));
		parallel_for(
			part.size(),
			[&](std::size_t b) {
				const std::uint64_t end = std::min(contexts, (b + 1) * kBlock);
				std::array<std::uint64_t, kMaxAlternatives> cnt{};
				for (std::uint64_t c = b * kBlock; c < end; ++c) {
					cnt.fill(0);
					const std::uint64_t b0 = context_base(c, stride, base);
					for (std::uint64_t tau = 0; tau < base; ++tau)
						++cnt[tab[b0 + tau * stride]];
					for (int x = 0; x < k; ++x)
						for (int y = 0; y < k; ++y)
							if (x != y)
								part[b][ab(x, y, k)] += cnt[static_cast<std::size_t>(x)] * cnt[static_cast<std::size_t>(y)];
				}
			},
			threads);
		for (const auto& p : part)
			for (std::size_t j = 0; j < kk; ++j)
				out.boundary[static_cast<std::size_t>(i)][j] += p[j];

		// refined: every profile and every adjacent pair of positions in voter i
		std::vector<std::vector<std::uint64_t>> rpart(blocks(total), std::vector<std::uint64_t>(nz * kk, 0));
		parallel_for(
			rpart.size(),
			[&](std::size_t b) {
				const std::uint64_t end = std::min(total, (b + 1) * kBlock);
				for (std::uint64_t idx = b * kBlock; idx < end; ++idx) {
					const auto r = static_cast<std::uint32_t>((idx / stride) % base);
					const std::uint64_t rest = idx - r * stride;
					const int x = tab[idx];
					const Ranking& o = t.order(r);
					for (int j = 0; j + 1 < k; ++j) {
						const int y = tab[rest + t.swap_adjacent(r, j) * stride];
						if (x == y)
							continue;
						const int z = transposition_index(o[static_cast<std::size_t>(j)], o[static_cast<std::size_t>(j + 1)], k);
						++rpart[b][static_cast<std::size_t>(z) * kk + ab(x, y, k)];
					}
				}
			},
			threads);
		for (const auto& p : rpart)
			for (std::size_t z = 0; z < nz; ++z)
				for (std::size_t j = 0; j < kk; ++j)
					out.refined_boundary[static_cast<std::size_t>(i)][z][j] += p[z * kk + j];
	}
	return out;
}

InfluenceBounds influence_bounds(const RankingInfluences& inf)
{
	InfluenceBounds b;
	const int k = inf.k;
	const double tol = 1e-12;
	b.sum_inf_var_margin = INFINITY;
	double var_sum = 0.0;
	for (int a = 0; a < k; ++a) {
		const double m = inf.mass[static_cast<std::size_t>(a)];
		const double var = m * (1.0 - m);
		var_sum += var;
		double s = 0.0;
		for (int i = 0; i < inf.n; ++i)
			s += inf.inf_a(i, a);
		b.sum_inf_var_margin = std::min(b.sum_inf_var_margin, s - var);
	}
	b.sum_inf_var = b.sum_inf_var_margin >= -tol;
	b.dist_to_constant = 1.0 - *std::max_element(inf.mass.begin(), inf.mass.end());
	b.const_dist_bound = 0.5 * k * var_sum;
	b.const_dist = b.dist_to_constant <= b.const_dist_bound + tol;
	b.refined_sum_margin = INFINITY;
	const int nz = k * (k - 1) / 2;
	for (int i = 0; i < inf.n; ++i)
		for (int a = 0; a < k; ++a) {
			double s = 0.0;
			for (int z = 0; z < nz; ++z)
				s += inf.refined_a(i, z, a);
			b.refined_sum_margin = std::min(b.refined_sum_margin, s - inf.inf_a(i, a) / (k * k));
		}
	b.refined_sum = b.refined_sum_margin >= -tol;
	return b;
}

double default_fiber_gamma(double eps, int n, int k)
{
	return eps * eps * eps / (4.0 * std::pow(n, 3) * std::pow(k, 9));
}

std::vector<FiberCensus> fiber_census(SocialChoiceFunction& f, double gamma, int threads)
{
	const int k = f.k();
	const int n = f.n();
	if (n > 16)
		throw std::length_error("fiber census keeps 2^n fibers per pair; n <= 16");
	const std::uint64_t total = profile_count(k, n, kExhaustiveProfileBudget);
	f.tabulate(threads);
	const auto& tab = f.table();
	const RankingTables& t = ranking_tables(k);
	const std::uint64_t base = t.count();
	const std::size_t fibers = std::size_t{1} << n;
	const std::size_t kk = static_cast<std::size_t>(k * k);
	const double fiber_size = std::pow(static_cast<double>(base) / 2.0, n);

	std::vector<FiberCensus> out;
	for (int i = 0; i < n; ++i) {
		const std::uint64_t stride = stride_of(k, n, i);
		const std::uint64_t contexts = total / base;
		std::vector<std::vector<std::uint64_t>> part(blocks(contexts), std::vector<std::uint64_t>(kk * fibers, 0));
		parallel_for(
			part.size(),
			[&](std::size_t b) {
				const std::uint64_t end = std::min(contexts, (b + 1) * kBlock);
				for (std::uint64_t c = b * kBlock; c < end; ++c) {
					const std::uint64_t b0 = context_base(c, stride, base);
					std::uint32_t reach = 0;
					for (std::uint64_t tau = 0; tau < base; ++tau)
						reach |= 1u << tab[b0 + tau * stride];
					if (std::popcount(reach) < 2)
						continue;
					for (std::uint64_t tau = 0; tau < base; ++tau) {
						const std::uint64_t idx = b0 + tau * stride;
						const int x = tab[idx];
						const Profile p = decode_profile(idx, k, n);
						for (int y = 0; y < k; ++y) {
							if (y == x || !((reach >> y) & 1u))
								continue;
							std::size_t z = 0;
							for (int v = 0; v < n; ++v)
								if (t.prefers(p[static_cast<std::size_t>(v)], x, y))
									z |= std::size_t{1} << v;
							++part[b][ab(x, y, k) * fibers + z];
						}
					}
				}
			},
			threads);
		std::vector<std::uint64_t> cnt(kk * fibers, 0);
		for (const auto& p : part)
			for (std::size_t j = 0; j < cnt.size(); ++j)
				cnt[j] += p[j];
		for (int a = 0; a < k; ++a)
			for (int b = 0; b < k; ++b) {
				if (a == b)
					continue;
				FiberCensus fc;
				fc.voter = i;
				fc.a = a;
				fc.b = b;
				fc.gamma = gamma;
				fc.fraction.resize(fibers);
				std::uint64_t in_boundary = 0;
				std::uint64_t in_large = 0;
				for (std::size_t z = 0; z < fibers; ++z) {
					const std::uint64_t c = cnt[ab(a, b, k) * fibers + z];
					fc.fraction[z] = static_cast<double>(c) / fiber_size;
					in_boundary += c;
					if (c > 0 && fc.fraction[z] >= 1.0 - gamma) {
						++fc.large;
						in_large += c;
					}
				}
				fc.boundary_mass = static_cast<double>(in_boundary) / static_cast<double>(total);
				fc.large_mass = static_cast<double>(in_large) / static_cast<double>(total);
				out.push_back(std::move(fc));
			}
	}
	return out;
}

LocalDictatorCensus local_dictator_census(SocialChoiceFunction& f, int voter, int threads)
{
	const int k = f.k();
	const int n = f.n();
	if (voter < 0 || voter >= n)
		throw std::invalid_argument("voter outside [1, n]");
	if (k < 3)
		throw std::invalid_argument("local dictators on triples need k >= 3");
	const std::uint64_t total = profile_count(k, n, kExhaustiveProfileBudget);
	f.tabulate(threads);
	const auto& tab = f.table();
	const RankingTables& t = ranking_tables(k);
	const std::uint64_t stride = stride_of(k, n, voter);
	const std::uint64_t base = t.count();

	LocalDictatorCensus out;
	out.voter = voter;
	for (std::uint32_t m = 0; m < (1u << k); ++m)
		if (std::popcount(m) == 3)
			out.triples.push_back(m);
	const std::size_t nh = out.triples.size();
	const std::size_t kk = static_cast<std::size_t>(k * k);
	std::vector<std::vector<std::uint64_t>> part(blocks(total), std::vector<std::uint64_t>(nh + kk, 0));
	parallel_for(
		part.size(),
		[&](std::size_t b) {
			const std::uint64_t end = std::min(total, (b + 1) * kBlock);
			for (std::uint64_t idx = b * kBlock; idx < end; ++idx) {
				const auto r = static_cast<std::uint32_t>((idx / stride) % base);
				const std::uint64_t rest = idx - r * stride;
				const Ranking& o = t.order(r);
				std::uint64_t pair_hit = 0;
				for (int p = 0; p + 2 < k; ++p) {
					// the adjacent block at positions p..p+2 is one candidate H
					std::array<std::uint8_t, 3> h{o[static_cast<std::size_t>(p)], o[static_cast<std::size_t>(p + 1)],
						o[static_cast<std::size_t>(p + 2)]};
					std::sort(h.begin(), h.end());
					bool dict = true;
					do {
						Ranking q = o;
						for (int s = 0; s < 3; ++s)
							q[static_cast<std::size_t>(p + s)] = h[static_cast<std::size_t>(s)];
						if (tab[rest + t.index_of(q) * stride] != h[0])
							dict = false;
					} while (dict && std::next_permutation(h.begin(), h.end()));
					if (!dict)
						continue;
					const std::uint32_t mask = (1u << h[0]) | (1u << h[1]) | (1u << h[2]);
					const auto it = std::lower_bound(out.triples.begin(), out.triples.end(), mask);
					++part[b][static_cast<std::size_t>(it - out.triples.begin())];
					for (int x = 0; x < 3; ++x)
						for (int y = 0; y < 3; ++y)
							if (x != y)
								pair_hit |= std::uint64_t{1} << ab(h[static_cast<std::size_t>(x)], h[static_cast<std::size_t>(y)], k);
				}
				for (std::size_t j = 0; j < kk; ++j)
					if ((pair_hit >> j) & 1u)
						++part[b][nh + j];
			}
		},
		threads);
	std::vector<std::uint64_t> cnt(nh + kk, 0);
	for (const auto& p : part)
		for (std::size_t j = 0; j < cnt.size(); ++j)
			cnt[j] += p[j];
	for (std::size_t h = 0; h < nh; ++h)
		out.ld_h.push_back(static_cast<double>(cnt[h]) / static_cast<double>(total));
	for (std::size_t j = 0; j < kk; ++j)
		out.ld_pair.push_back(static_cast<double>(cnt[nh + j]) / static_cast<double>(total));
	return out;
}

BoundaryAudit non_manip_boundary_audit(SocialChoiceFunction& f, int threads)
{
	const int k = f.k();
	const int n = f.n();
	const std::vector<std::uint8_t> w = manipulation_window_table(f, threads);
	const auto& tab = f.table();
	const RankingTables& t = ranking_tables(k);
	const std::uint64_t total = tab.size();
	const std::uint64_t base = t.count();
	std::vector<BoundaryAudit> part(blocks(total));
	parallel_for(
		part.size(),
		[&](std::size_t b) {
			BoundaryAudit& a = part[b];
			const std::uint64_t end = std::min(total, (b + 1) * kBlock);
			for (std::uint64_t idx = b * kBlock; idx < end; ++idx)
				for (int i = 0; i < n; ++i) {
					const std::uint64_t stride = stride_of(k, n, i);
					const auto r = static_cast<std::uint32_t>((idx / stride) % base);
					const std::uint64_t rest = idx - r * stride;
					for (int j = 0; j + 1 < k; ++j) {
						const std::uint32_t s = t.swap_adjacent(r, j);
						const std::uint64_t pi = rest + s * stride;
						const int x = tab[idx];
						const int y = tab[pi];
						if (x == y)
							continue;
						// [x:y] applied to pi_i
						std::uint32_t back = s;
						const int px = t.position(s, x);
						const int py = t.position(s, y);
						if (std::abs(px - py) == 1)
							back = t.swap_adjacent(s, std::min(px, py));
						if (back == r)
							continue;
						++a.pairs;
						if (w[idx] != 2 && w[pi] != 2) {
							if (a.violations++ == 0)
								a.first_violation = profile_to_string(decode_profile(idx, k, n), k) + " vs "
									+ profile_to_string(decode_profile(pi, k, n), k);
						}
					}
				}
		},
		threads);
	BoundaryAudit out;
	for (auto& a : part) {
		out.pairs += a.pairs;
		if (out.violations == 0 && a.violations)
			out.first_violation = a.first_violation;
		out.violations += a.violations;
	}
	return out;
}

} // namespace qsc
