#include "qsc/manip/scf.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <stdexcept>

#include "qsc/boolean/generators.hpp"
#include "qsc/parallel.hpp"
#include "qsc/spec_string.hpp"

namespace qsc {

namespace {

constexpr std::uint64_t kBlock = 1u << 15;

std::uint64_t block_count(std::uint64_t total)
{
	return (total + kBlock - 1) / kBlock;
}

using Scores = std::array<int, kMaxAlternatives>;

int argmax_lowest(const Scores& s, int k)
{
	int best = 0;
	for (int a = 1; a < k; ++a)
		if (s[static_cast<std::size_t>(a)] > s[static_cast<std::size_t>(best)])
			best = a;
	return best;
}

bool top_shared(const Scores& s, int k)
{
	const int best = argmax_lowest(s, k);
	for (int a = 0; a < k; ++a)
		if (a != best && s[static_cast<std::size_t>(a)] == s[static_cast<std::size_t>(best)])
			return true;
	return false;
}

template <class ScoreFn>
SocialChoiceFunction scoring_rule(int k, int n, std::string name, ScoreFn score)
{
	SocialChoiceFunction f(
		k, n, std::move(name), [k, score](std::span<const std::uint32_t> p) { return argmax_lowest(score(p), k); },
		"lowest alternative index");
	f.set_tie_predicate([k, score](std::span<const std::uint32_t> p) { return top_shared(score(p), k); });
	return f;
}

void check_voter(int voter, int n)
{
	if (voter < 0 || voter >= n)
		throw std::invalid_argument("voter outside [1, n]");
}

void check_alternative(int a, int k)
{
	if (a < 0 || a >= k)
		throw std::invalid_argument("alternative outside the first k letters");
}

} // namespace

SocialChoiceFunction::SocialChoiceFunction(int k, int n, std::string name, Rule rule, std::string tie_break)
	: k_(k), n_(n), name_(std::move(name)), tie_break_(std::move(tie_break)), rule_(std::move(rule))
{
	profile_count(k, n, UINT64_MAX / 64);
	ranking_tables(k);
}

SocialChoiceFunction::SocialChoiceFunction(int k, int n, std::vector<std::uint8_t> table, std::string name)
	: k_(k), n_(n), name_(std::move(name)), tie_break_("table"), table_(std::move(table))
{
	if (table_.size() != profile_count(k, n, kScfTableBudget))
		throw std::invalid_argument("table size differs from (k!)^n");
	for (auto v : table_)
		if (v >= k)
			throw std::invalid_argument("table value outside [k]");
}

void SocialChoiceFunction::tabulate(int threads)
{
	if (has_table())
		return;
	const std::uint64_t total = profile_count(k_, n_, kScfTableBudget);
	std::vector<std::uint8_t> t(total);
	parallel_for(
		block_count(total),
		[&](std::size_t b) {
			enumerate_profiles(k_, n_, b * kBlock, std::min(total, (b + 1) * kBlock),
				[&](std::uint64_t idx, const Profile& p) { t[idx] = static_cast<std::uint8_t>(rule_(p)); });
		},
		threads);
	table_ = std::move(t);
}

int SocialChoiceFunction::operator()(std::span<const std::uint32_t> profile) const
{
	if (has_table())
		return table_[encode_profile(profile, k_)];
	return rule_(profile);
}

int SocialChoiceFunction::at(std::uint64_t index) const
{
	if (has_table())
		return table_[index];
	return rule_(decode_profile(index, k_, n_));
}

SocialChoiceFunction plurality_rule(int k, int n)
{
	const RankingTables* t = &ranking_tables(k);
	return scoring_rule(k, n, "plurality", [t](std::span<const std::uint32_t> p) {
		Scores s{};
		for (auto r : p)
			++s[t->order(r)[0]];
		return s;
	});
}

SocialChoiceFunction borda_rule(int k, int n)
{
	const RankingTables* t = &ranking_tables(k);
	return scoring_rule(k, n, "borda", [t, k](std::span<const std::uint32_t> p) {
		Scores s{};
		for (auto r : p)
			for (int j = 0; j < k; ++j)
				s[t->order(r)[static_cast<std::size_t>(j)]] += k - 1 - j;
		return s;
	});
}

SocialChoiceFunction veto_rule(int k, int n)
{
	const RankingTables* t = &ranking_tables(k);
	return scoring_rule(k, n, "veto", [t, k](std::span<const std::uint32_t> p) {
		Scores s{};
		for (auto r : p)
			--s[t->order(r)[static_cast<std::size_t>(k - 1)]];
		return s;
	});
}

SocialChoiceFunction copeland_rule(int k, int n)
{
	const RankingTables* t = &ranking_tables(k);
	// 2 per pairwise win, 1 per pairwise tie
	return scoring_rule(k, n, "copeland", [t, k](std::span<const std::uint32_t> p) {
		Scores s{};
		for (int a = 0; a < k; ++a)
			for (int b = a + 1; b < k; ++b) {
				int margin = 0;
				for (auto r : p)
					margin += t->prefers(r, a, b) ? 1 : -1;
				if (margin > 0)
					s[static_cast<std::size_t>(a)] += 2;
				else if (margin < 0)
					s[static_cast<std::size_t>(b)] += 2;
				else {
					++s[static_cast<std::size_t>(a)];
					++s[static_cast<std::size_t>(b)];
				}
			}
		return s;
	});
}

SocialChoiceFunction dictator_rule(int k, int n, int voter)
{
	check_voter(voter, n);
	const RankingTables* t = &ranking_tables(k);
	return SocialChoiceFunction(k, n, "dictator:i=" + std::to_string(voter + 1),
		[t, voter](std::span<const std::uint32_t> p) { return static_cast<int>(t->order(p[static_cast<std::size_t>(voter)])[0]); });
}

SocialChoiceFunction top_h_rule(int k, int n, int voter, std::uint32_t h_mask)
{
	check_voter(voter, n);
	if (h_mask == 0 || h_mask >= (1u << k))
		throw std::invalid_argument("H must be a nonempty subset of the alternatives");
	std::string h;
	for (int a = 0; a < k; ++a)
		if ((h_mask >> a) & 1u)
			h += alternative_letter(a);
	const RankingTables* t = &ranking_tables(k);
	return SocialChoiceFunction(k, n, "top_h:i=" + std::to_string(voter + 1) + ",h=" + h,
		[t, k, voter, h_mask](std::span<const std::uint32_t> p) {
			const Ranking& o = t->order(p[static_cast<std::size_t>(voter)]);
			for (int j = 0; j < k; ++j)
				if ((h_mask >> o[static_cast<std::size_t>(j)]) & 1u)
					return static_cast<int>(o[static_cast<std::size_t>(j)]);
			return -1;
		});
}

SocialChoiceFunction two_valued_rule(int k, int n, int a, int b, const BooleanFunction& g)
{
	check_alternative(a, k);
	check_alternative(b, k);
	if (a == b)
		throw std::invalid_argument("two-valued rule needs a != b");
	if (g.n() != n)
		throw std::invalid_argument("Boolean function arity differs from n");
	const RankingTables* t = &ranking_tables(k);
	const BooleanFunction pm = g.codomain() == Codomain::ZeroOne ? g.to_plus_minus() : g;
	return SocialChoiceFunction(k, n, std::string("two_valued:a=") + alternative_letter(a) + ",b=" + alternative_letter(b),
		[t, a, b, pm](std::span<const std::uint32_t> p) {
			std::uint64_t x = 0;
			for (std::size_t i = 0; i < p.size(); ++i)
				if (t->prefers(p[i], a, b))
					x |= std::uint64_t{1} << i;
			return pm[x] > 0 ? a : b;
		});
}

SocialChoiceFunction constant_rule(int k, int n, int c)
{
	check_alternative(c, k);
	return SocialChoiceFunction(k, n, std::string("constant:c=") + alternative_letter(c), [c](std::span<const std::uint32_t>) { return c; });
}

SocialChoiceFunction make_scf(std::string_view spec, int k, int n)
{
	const SpecString s = SpecString::parse(spec);
	auto letter = [&](const char* key, const std::string& fallback) {
		const std::string v = s.get_string(key, fallback);
		if (v.size() != 1)
			throw std::invalid_argument(std::string("parameter ") + key + " must be a single letter");
		return alternative_from_letter(v[0]);
	};
	auto voter = [&] { return static_cast<int>(s.get_int("i", 1)) - 1; };
	if (s.name == "plurality") {
		s.expect_only({});
		return plurality_rule(k, n);
	}
	if (s.name == "borda") {
		s.expect_only({});
		return borda_rule(k, n);
	}
	if (s.name == "veto") {
		s.expect_only({});
		return veto_rule(k, n);
	}
	if (s.name == "copeland") {
		s.expect_only({});
		return copeland_rule(k, n);
	}
	if (s.name == "dictator") {
		s.expect_only({"i"});
		return dictator_rule(k, n, voter());
	}
	if (s.name == "top_h") {
		s.expect_only({"i", "h"});
		std::uint32_t mask = 0;
		for (char c : s.get_string("h", ""))
			mask |= 1u << alternative_from_letter(c);
		return top_h_rule(k, n, voter(), mask);
	}
	if (s.name == "two_valued") {
		s.expect_only({"a", "b", "g"});
		const std::string g = s.get_string("g", "majority");
		BooleanFunction fn;
		if (g == "dictator")
			fn = dictator(n, 0);
		else if (g == "majority" || g == "and" || g == "or" || g == "parity")
			fn = make_function(g + ":n=" + std::to_string(n));
		else
			throw std::invalid_argument("unknown Boolean rule '" + g + "' for two_valued");
		return two_valued_rule(k, n, letter("a", "a"), letter("b", "b"), fn);
	}
	if (s.name == "constant") {
		s.expect_only({"c"});
		return constant_rule(k, n, letter("c", "a"));
	}
	throw std::invalid_argument("unknown social choice rule '" + s.name + "'");
}

std::vector<std::string> scf_zoo(int k, int n)
{
	std::vector<std::string> z{"plurality", "borda", "veto", "copeland"};
	for (int i = 1; i <= n; ++i)
		z.push_back("dictator:i=" + std::to_string(i));
	std::string all;
	for (int a = 0; a < k; ++a)
		all += alternative_letter(a);
	z.push_back("top_h:i=1,h=ab");
	if (k >= 4)
		z.push_back("top_h:i=" + std::to_string(n) + ",h=" + all.substr(1));
	z.push_back("top_h:i=1,h=" + all);
	z.push_back("two_valued:a=a,b=b,g=dictator");
	z.push_back("two_valued:a=a,b=c,g=and");
	z.push_back("two_valued:a=b,b=c,g=or");
	if (n % 2 == 1)
		z.push_back("two_valued:a=a,b=b,g=majority");
	if (n >= 2)
		z.push_back("two_valued:a=a,b=b,g=parity");
	z.push_back("constant:c=a");
	return z;
}

std::uint32_t scf_range(const SocialChoiceFunction& f, int threads)
{
	const std::uint64_t total = profile_count(f.k(), f.n(), kScfTableBudget);
	std::vector<std::uint32_t> part(block_count(total), 0);
	parallel_for(
		part.size(),
		[&](std::size_t b) {
			std::uint32_t m = 0;
			enumerate_profiles(f.k(), f.n(), b * kBlock, std::min(total, (b + 1) * kBlock),
				[&](std::uint64_t idx, const Profile& p) { m |= 1u << (f.has_table() ? f.at(idx) : f(p)); });
			part[b] = m;
		},
		threads);
	std::uint32_t m = 0;
	for (auto v : part)
		m |= v;
	return m;
}

int dictator_on_range(const SocialChoiceFunction& f, int threads)
{
	const std::uint32_t range = scf_range(f, threads);
	const RankingTables& t = ranking_tables(f.k());
	const std::uint64_t total = profile_count(f.k(), f.n(), kScfTableBudget);
	for (int i = 0; i < f.n(); ++i) {
		std::atomic<bool> fails{false};
		parallel_for(
			block_count(total),
			[&](std::size_t b) {
				if (fails.load(std::memory_order_relaxed))
					return;
				enumerate_profiles(f.k(), f.n(), b * kBlock, std::min(total, (b + 1) * kBlock), [&](std::uint64_t idx, const Profile& p) {
					const Ranking& o = t.order(p[static_cast<std::size_t>(i)]);
					int top = -1;
					for (int j = 0; j < f.k() && top < 0; ++j)
						if ((range >> o[static_cast<std::size_t>(j)]) & 1u)
							top = o[static_cast<std::size_t>(j)];
					if ((f.has_table() ? f.at(idx) : f(p)) != top)
						fails.store(true, std::memory_order_relaxed);
				});
			},
			threads);
		if (!fails.load())
			return i;
	}
	return -1;
}

SymmetryAudit anonymity_audit(const SocialChoiceFunction& f, int threads)
{
	const std::uint64_t total = profile_count(f.k(), f.n(), kScfTableBudget);
	std::vector<SymmetryAudit> part(block_count(total));
	parallel_for(
		part.size(),
		[&](std::size_t b) {
			SymmetryAudit& a = part[b];
			Profile q;
			enumerate_profiles(f.k(), f.n(), b * kBlock, std::min(total, (b + 1) * kBlock), [&](std::uint64_t, const Profile& p) {
				const int v = f(p);
				for (int i = 0; i + 1 < f.n(); ++i) {
					q = p;
					std::swap(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i + 1)]);
					++a.checked;
					if (f(q) != v)
						++a.violations;
				}
			});
		},
		threads);
	SymmetryAudit out;
	for (const auto& a : part) {
		out.checked += a.checked;
		out.violations += a.violations;
	}
	return out;
}

SymmetryAudit neutrality_audit(const SocialChoiceFunction& f, bool skip_ties, int threads)
{
	const int k = f.k();
	const RankingTables& t = ranking_tables(k);
	// rename[c][r]: ranking r with alternatives c and c+1 exchanged
	std::vector<std::vector<std::uint32_t>> rename(static_cast<std::size_t>(std::max(0, k - 1)), std::vector<std::uint32_t>(t.count()));
	for (int c = 0; c + 1 < k; ++c)
		for (std::uint32_t r = 0; r < t.count(); ++r) {
			Ranking o = t.order(r);
			for (int j = 0; j < k; ++j) {
				auto& x = o[static_cast<std::size_t>(j)];
				if (x == c)
					x = static_cast<std::uint8_t>(c + 1);
				else if (x == c + 1)
					x = static_cast<std::uint8_t>(c);
			}
			rename[static_cast<std::size_t>(c)][r] = t.index_of(o);
		}
	const std::uint64_t total = profile_count(k, f.n(), kScfTableBudget);
	std::vector<SymmetryAudit> part(block_count(total));
	parallel_for(
		part.size(),
		[&](std::size_t b) {
			SymmetryAudit& a = part[b];
			Profile q;
			enumerate_profiles(k, f.n(), b * kBlock, std::min(total, (b + 1) * kBlock), [&](std::uint64_t, const Profile& p) {
				const int v = f(p);
				for (int c = 0; c + 1 < k; ++c) {
					q = p;
					for (auto& r : q)
						r = rename[static_cast<std::size_t>(c)][r];
					if (skip_ties && (f.tied(p) || f.tied(q))) {
						++a.skipped_ties;
						continue;
					}
					const int expect = v == c ? c + 1 : (v == c + 1 ? c : v);
					++a.checked;
					if (f(q) != expect)
						++a.violations;
				}
			});
		},
		threads);
	SymmetryAudit out;
	for (const auto& a : part) {
		out.checked += a.checked;
		out.violations += a.violations;
		out.skipped_ties += a.skipped_ties;
	}
	return out;
}

} // namespace qsc
