#include "qsc/condorcet/constitution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "qsc/boolean/generators.hpp"
#include "qsc/parallel.hpp"

namespace qsc {

namespace {

constexpr int kMaxAlternatives = 8;

struct PairIndex {
	int k;
	std::size_t operator()(int a, int b) const
	{
		// a < b
		return static_cast<std::size_t>(a * k - a * (a + 1) / 2 + (b - a - 1));
	}
};

// for each ranking, bit p set when the lower-indexed alternative of pair p is ranked higher
std::vector<std::uint32_t> ranking_pair_bits(int k)
{
	std::vector<int> perm(static_cast<std::size_t>(k));
	std::iota(perm.begin(), perm.end(), 0);
	const PairIndex idx{k};
	std::vector<std::uint32_t> out;
	do {
		std::array<int, kMaxAlternatives> pos{};
		for (int r = 0; r < k; ++r)
			pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])] = r;
		std::uint32_t bits = 0;
		for (int a = 0; a < k; ++a)
			for (int b = a + 1; b < k; ++b)
				if (pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)])
					bits |= 1u << idx(a, b);
		out.push_back(bits);
	} while (std::next_permutation(perm.begin(), perm.end()));
	return out;
}

bool transitive(const Constitution& c, const std::vector<std::uint64_t>& x)
{
	const int k = c.k();
	const PairIndex idx{k};
	std::array<bool, kMaxAlternatives + 1> seen{};
	std::array<int, kMaxAlternatives> wins{};
	for (int a = 0; a < k; ++a)
		for (int b = a + 1; b < k; ++b)
			++wins[static_cast<std::size_t>(c.prefers(a, b, x[idx(a, b)]) > 0 ? a : b)];
	for (int a = 0; a < k; ++a) {
		const auto w = static_cast<std::size_t>(wins[static_cast<std::size_t>(a)]);
		if (seen[w])
			return false;
		seen[w] = true;
	}
	return true;
}

int constant_value(const BooleanFunction& f)
{
	const double v = f[0];
	for (std::uint64_t x = 1; x < f.size(); ++x)
		if (f[x] != v)
			return 0;
	return v > 0 ? 1 : -1;
}

// s with f = s x_j for some j, or 0
std::pair<int, int> dictator_of(const BooleanFunction& f)
{
	for (int j = 0; j < f.n(); ++j)
		for (int s : {1, -1}) {
			bool match = true;
			for (std::uint64_t x = 0; x < f.size() && match; ++x)
				match = f[x] == s * sign_of(x, j);
			if (match)
				return {j, s};
		}
	return {-1, 0};
}

} // namespace

Constitution::Constitution(int k, int n) : k_(k), n_(n)
{
	if (k < 2 || k > kMaxAlternatives)
		throw std::invalid_argument("constitution needs 2 <= k <= 8");
	BooleanFunction::check_arity(n);
	if (n < 1)
		throw std::invalid_argument("constitution needs at least one voter");
	table_.assign(static_cast<std::size_t>(k * (k - 1) / 2), constant_function(n, 1));
}

std::size_t Constitution::slot(int a, int b) const
{
	if (a < 0 || b < 0 || a >= k_ || b >= k_ || a == b)
		throw std::out_of_range("alternative pair outside [0,k)");
	return PairIndex{k_}(std::min(a, b), std::max(a, b));
}

void Constitution::set(int a, int b, BooleanFunction f)
{
	if (f.n() != n_)
		throw std::invalid_argument("pairwise function arity differs from voter count");
	if (f.codomain() == Codomain::ZeroOne)
		f = f.to_plus_minus();
	if (f.codomain() != Codomain::PlusMinusOne)
		throw std::invalid_argument("pairwise functions must be Boolean");
	if (a > b) {
		// f^{b>a}(x^{b>a}) = -f^{a>b}(x^{a>b}) and x^{b>a} is the complement
		const BooleanFunction g = f;
		f = BooleanFunction::tabulate(
			n_, [&](std::uint64_t x) { return -g[~x & ((std::uint64_t{1} << n_) - 1)]; }, Codomain::PlusMinusOne);
	}
	table_[slot(a, b)] = std::move(f);
}

BooleanFunction Constitution::pairwise(int a, int b) const
{
	const BooleanFunction& f = table_[slot(a, b)];
	if (a < b)
		return f;
	const std::uint64_t mask = (std::uint64_t{1} << n_) - 1;
	return BooleanFunction::tabulate(n_, [&](std::uint64_t x) { return -f[~x & mask]; }, Codomain::PlusMinusOne);
}

int Constitution::prefers(int a, int b, std::uint64_t x_ab) const
{
	if (a < b)
		return table_[slot(a, b)][x_ab] > 0 ? 1 : -1;
	const std::uint64_t mask = (std::uint64_t{1} << n_) - 1;
	return table_[slot(a, b)][~x_ab & mask] > 0 ? -1 : 1;
}

Constitution Constitution::uniform(int k, int n, const BooleanFunction& f)
{
	Constitution c(k, n);
	for (int a = 0; a < k; ++a)
		for (int b = a + 1; b < k; ++b)
			c.set(a, b, f);
	return c;
}

ConstitutionReport constitution_check(const Constitution& c, std::uint64_t samples, std::uint64_t seed, int threads)
{
	const int k = c.k();
	const int n = c.n();
	const auto rankings = ranking_pair_bits(k);
	const std::size_t pairs = static_cast<std::size_t>(k * (k - 1) / 2);
	ConstitutionReport rep;
	const double total = std::pow(static_cast<double>(rankings.size()), n);
	auto fill = [&](std::vector<std::uint64_t>& x, int v, std::uint32_t bits) {
		for (std::size_t p = 0; p < pairs; ++p)
			if (bits >> p & 1u)
				x[p] |= std::uint64_t{1} << v;
	};
	if (total <= kConstitutionBudget) {
		rep.exhaustive = true;
		const std::size_t R = rankings.size();
		// chunk on voter 0's ranking
		std::vector<std::uint64_t> bad(R, 0);
		parallel_for(
			R,
			[&](std::size_t r0) {
				std::vector<std::uint64_t> x(pairs, 0);
				std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
				digit[0] = r0;
				std::uint64_t count = 0;
				for (;;) {
					std::fill(x.begin(), x.end(), 0);
					for (int v = 0; v < n; ++v)
						fill(x, v, rankings[digit[static_cast<std::size_t>(v)]]);
					if (!transitive(c, x))
						++count;
					int v = 1;
					for (; v < n; ++v) {
						auto& d = digit[static_cast<std::size_t>(v)];
						if (++d < R)
							break;
						d = 0;
					}
					if (v >= n)
						break;
				}
				bad[r0] = count;
			},
			threads);
		std::uint64_t s = 0;
		for (auto b : bad)
			s += b;
		rep.p_nontransitive = static_cast<double>(s) / total;
	} else {
		rep.exhaustive = false;
		const auto m = monte_carlo<1>(
			samples, seed,
			[&](SplitMix64& rng, std::array<double, 1>& out) {
				std::vector<std::uint64_t> x(pairs, 0);
				for (int v = 0; v < n; ++v)
					fill(x, v, rankings[rng.below(rankings.size())]);
				out[0] = transitive(c, x) ? 0.0 : 1.0;
			},
			threads);
		rep.p_nontransitive = m[0].mean();
		rep.std_error = m[0].std_error();
	}

	// partition characterisation: non-constant pairs must form cliques,
	// constant pairs must order the cliques totally
	std::vector<int> comp(static_cast<std::size_t>(k));
	std::iota(comp.begin(), comp.end(), 0);
	std::function<int(int)> root = [&](int a) { return comp[static_cast<std::size_t>(a)] == a ? a : root(comp[static_cast<std::size_t>(a)]); };
	std::vector<std::vector<int>> cval(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
	for (int a = 0; a < k; ++a)
		for (int b = a + 1; b < k; ++b) {
			const int v = constant_value(c.pairwise(a, b));
			cval[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
			cval[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = -v;
			if (v == 0)
				comp[static_cast<std::size_t>(root(b))] = root(a);
		}
	std::vector<std::vector<int>> blocks;
	std::vector<int> block_of(static_cast<std::size_t>(k), -1);
	for (int a = 0; a < k; ++a) {
		const int r = root(a);
		if (block_of[static_cast<std::size_t>(r)] < 0) {
			block_of[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
			blocks.emplace_back();
		}
		block_of[static_cast<std::size_t>(a)] = block_of[static_cast<std::size_t>(r)];
		blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(a)])].push_back(a);
	}
	bool member = true;
	for (int a = 0; a < k && member; ++a)
		for (int b = a + 1; b < k && member; ++b) {
			const bool same = block_of[static_cast<std::size_t>(a)] == block_of[static_cast<std::size_t>(b)];
			if (same && cval[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 0)
				member = false;
		}
	// between blocks: one direction for every cross pair
	auto above = [&](const std::vector<int>& A, const std::vector<int>& B) {
		for (int a : A)
			for (int b : B)
				if (cval[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != 1)
					return false;
		return true;
	};
	if (member) {
		std::vector<int> wins(blocks.size(), 0);
		for (std::size_t s = 0; s < blocks.size(); ++s)
			for (std::size_t t = 0; t < blocks.size(); ++t)
				if (s != t && above(blocks[s], blocks[t]))
					++wins[s];
		std::vector<std::size_t> order(blocks.size());
		std::iota(order.begin(), order.end(), 0);
		std::stable_sort(order.begin(), order.end(), [&](std::size_t s, std::size_t t) { return wins[s] > wins[t]; });
		for (std::size_t s = 0; s < order.size() && member; ++s)
			for (std::size_t t = s + 1; t < order.size() && member; ++t)
				member = above(blocks[order[s]], blocks[order[t]]);
		for (std::size_t s = 0; s < order.size() && member; ++s) {
			Block blk;
			blk.alternatives = blocks[order[s]];
			std::sort(blk.alternatives.begin(), blk.alternatives.end());
			if (blk.alternatives.size() >= 3) {
				int voter = -2;
				int sign = 0;
				for (std::size_t i = 0; i < blk.alternatives.size() && member; ++i)
					for (std::size_t j = i + 1; j < blk.alternatives.size() && member; ++j) {
						const auto [v, sg] = dictator_of(c.pairwise(blk.alternatives[i], blk.alternatives[j]));
						if (v < 0 || (voter != -2 && (v != voter || sg != sign)))
							member = false;
						voter = v;
						sign = sg;
					}
				blk.dictator = voter;
				blk.sign = sign;
			}
			rep.partition.push_back(blk);
		}
	}
	rep.member = member;
	if (!member)
		rep.partition.clear();
	return rep;
}

Constitution constitution_from_partition(int k, int n, const std::vector<std::vector<int>>& blocks,
	const std::vector<int>& dictators, const std::vector<int>& signs, const BooleanFunction& pair_rule)
{
	Constitution c(k, n);
	std::vector<int> rank(static_cast<std::size_t>(k), -1);
	for (std::size_t s = 0; s < blocks.size(); ++s)
		for (int a : blocks[s]) {
			if (a < 0 || a >= k || rank[static_cast<std::size_t>(a)] >= 0)
				throw std::invalid_argument("blocks must partition the alternatives");
			rank[static_cast<std::size_t>(a)] = static_cast<int>(s);
		}
	for (int r : rank)
		if (r < 0)
			throw std::invalid_argument("blocks must cover every alternative");
	if (dictators.size() != blocks.size() || signs.size() != blocks.size())
		throw std::invalid_argument("one dictator and sign per block");
	if (constant_value(pair_rule) != 0)
		throw std::invalid_argument("pair rule must be non-constant");
	for (int a = 0; a < k; ++a)
		for (int b = a + 1; b < k; ++b) {
			const auto ra = static_cast<std::size_t>(rank[static_cast<std::size_t>(a)]);
			const auto rb = static_cast<std::size_t>(rank[static_cast<std::size_t>(b)]);
			if (ra != rb) {
				c.set(a, b, constant_function(n, ra < rb ? 1 : -1));
			} else if (blocks[ra].size() == 2) {
				c.set(a, b, pair_rule);
			} else {
				c.set(a, b, dictator(n, dictators[ra], signs[ra]));
			}
		}
	return c;
}

std::array<BooleanFunction, 3> restrict_to_triple(const Constitution& c, int a, int b, int cc)
{
	return {c.pairwise(a, b), c.pairwise(b, cc), c.pairwise(cc, a)};
}

} // namespace qsc
