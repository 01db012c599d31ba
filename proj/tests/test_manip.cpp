#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "qsc/boolean/generators.hpp"
#include "qsc/manip/census.hpp"
#include "qsc/manip/influence.hpp"
#include "qsc/manip/io.hpp"
#include "qsc/manip/nonmanip.hpp"
#include "qsc/manip/paths.hpp"
#include "qsc/manip/ranking.hpp"
#include "qsc/manip/scf.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

namespace {

// rankings in lexicographic order via next_permutation
std::vector<std::vector<int>> all_rankings(int k)
{
	std::vector<int> r(static_cast<std::size_t>(k));
	std::iota(r.begin(), r.end(), 0);
	std::vector<std::vector<int>> out;
	do
		out.push_back(r);
	while (std::next_permutation(r.begin(), r.end()));
	return out;
}

// Borda with points k-1, ..., 0 and the lowest index winning ties
int borda_oracle(const std::vector<std::vector<int>>& profile, int k)
{
	std::vector<int> score(static_cast<std::size_t>(k), 0);
	for (const auto& r : profile)
		for (int j = 0; j < k; ++j)
			score[static_cast<std::size_t>(r[static_cast<std::size_t>(j)])] += k - 1 - j;
	return static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
}

int window(const std::vector<int>& a, const std::vector<int>& b)
{
	int lo = -1;
	int hi = -1;
	for (int j = 0; j < static_cast<int>(a.size()); ++j)
		if (a[static_cast<std::size_t>(j)] != b[static_cast<std::size_t>(j)]) {
			if (lo < 0)
				lo = j;
			hi = j;
		}
	return lo < 0 ? 0 : hi - lo + 1;
}

int rank_of(const std::vector<int>& r, int a)
{
	return static_cast<int>(std::find(r.begin(), r.end(), a) - r.begin());
}

struct Brute {
	double p_manip = 0.0;
	std::vector<double> p_r;
};

// For every profile, the narrowest window of any beneficial misreport.
Brute census_oracle(const SocialChoiceFunction& f, int rmax)
{
	const int k = f.k();
	const int n = f.n();
	const auto R = all_rankings(k);
	const std::uint64_t total = profile_count(k, n, UINT64_MAX);
	Brute b;
	b.p_r.assign(static_cast<std::size_t>(rmax) + 1, 0.0);
	std::uint64_t manip = 0;
	std::vector<std::uint64_t> by_r(static_cast<std::size_t>(rmax) + 1, 0);
	for (std::uint64_t idx = 0; idx < total; ++idx) {
		Profile p = decode_profile(idx, k, n);
		const int out = f(p);
		int best = 1000;
		for (int i = 0; i < n; ++i) {
			const auto& truth = R[p[static_cast<std::size_t>(i)]];
			const std::uint32_t keep = p[static_cast<std::size_t>(i)];
			for (std::uint32_t s = 0; s < R.size(); ++s) {
				p[static_cast<std::size_t>(i)] = s;
				const int alt = f(p);
				if (rank_of(truth, alt) < rank_of(truth, out))
					best = std::min(best, window(truth, R[s]));
			}
			p[static_cast<std::size_t>(i)] = keep;
		}
		if (best < 1000) {
			++manip;
			for (int w = best; w <= rmax; ++w)
				++by_r[static_cast<std::size_t>(w)];
		}
	}
	b.p_manip = static_cast<double>(manip) / static_cast<double>(total);
	for (int w = 0; w <= rmax; ++w)
		b.p_r[static_cast<std::size_t>(w)] = static_cast<double>(by_r[static_cast<std::size_t>(w)]) / static_cast<double>(total);
	return b;
}

} // namespace

TEST_CASE("ranking tables follow lexicographic order")
{
	for (int k = 1; k <= 5; ++k) {
		const RankingTables& t = ranking_tables(k);
		const auto R = all_rankings(k);
		REQUIRE(t.count() == R.size());
		for (std::uint32_t r = 0; r < t.count(); ++r) {
			for (int j = 0; j < k; ++j) {
				CHECK(t.order(r)[static_cast<std::size_t>(j)] == R[r][static_cast<std::size_t>(j)]);
				CHECK(t.position(r, R[r][static_cast<std::size_t>(j)]) == j);
			}
			CHECK(t.index_of(std::span<const int>(R[r])) == r);
			CHECK(t.parse(t.to_string(r)) == r);
			for (std::uint32_t s = 0; s < t.count(); ++s)
				CHECK(t.span(r, s) == window(R[r], R[s]));
		}
	}
	CHECK(ranking_tables(4).to_string(0) == "abcd");
	CHECK(ranking_tables(4).to_string(23) == "dcba");
	CHECK_THROWS(ranking_tables(3).parse("aab"));
}

TEST_CASE("profile encoding")
{
	const Profile p = parse_profile("abcd,cadb,dcba", 4);
	CHECK(profile_to_string(p, 4) == "abcd,cadb,dcba");
	const std::uint64_t idx = encode_profile(p, 4);
	CHECK(decode_profile(idx, 4, 3) == p);
	// voter 0 most significant
	CHECK(encode_profile(parse_profile("bac,abc", 3), 3) == 2 * 6 + 0);
	CHECK_THROWS_AS(profile_count(8, 5, 100000000), std::length_error);
}

TEST_CASE("Borda table against the scoring oracle")
{
	for (auto [k, n] : {std::pair{3, 3}, std::pair{4, 2}}) {
		const SocialChoiceFunction f = borda_rule(k, n);
		const auto R = all_rankings(k);
		const std::uint64_t total = profile_count(k, n, UINT64_MAX);
		for (std::uint64_t idx = 0; idx < total; ++idx) {
			const Profile p = decode_profile(idx, k, n);
			std::vector<std::vector<int>> prof;
			for (auto r : p)
				prof.push_back(R[r]);
			CHECK(f(p) == borda_oracle(prof, k));
		}
	}
}

TEST_CASE("the four-alternative Borda manipulation")
{
	const SocialChoiceFunction f = borda_rule(4, 2);
	const Profile p = parse_profile("abcd,cadb", 4);
	CHECK(f(p) == 0);
	const Profile lie = parse_profile("abcd,cdba", 4);
	CHECK(f(lie) == 2);
	// voter 2 ranks c above a
	CHECK(ranking_tables(4).prefers(p[1], 2, 0));
	const auto m = is_manipulable_at(f, p);
	REQUIRE(m.has_value());
	CHECK(m->voter == 1);
	CHECK(is_valid_manipulation(f, *m));
	CHECK(m->manipulated_outcome == 2);
}

TEST_CASE("exhaustive census matches brute force")
{
	for (const char* rule : {"borda", "plurality", "copeland", "veto"})
		for (auto [k, n] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
			SocialChoiceFunction f = make_scf(rule, k, n);
			const Brute b = census_oracle(f, k);
			const CensusReport c = manipulation_census(f, k, CensusMode::Exhaustive);
			CHECK(c.exhaustive);
			CHECK(c.p_manip == doctest::Approx(b.p_manip).epsilon(1e-15));
			for (int w = 2; w <= k; ++w)
				CHECK(c.p_r[static_cast<std::size_t>(w)] == doctest::Approx(b.p_r[static_cast<std::size_t>(w)]).epsilon(1e-15));
		}
}

TEST_CASE("sampled census agrees with the exhaustive one")
{
	SocialChoiceFunction f = borda_rule(4, 3);
	const CensusReport e = manipulation_census(f, 4, CensusMode::Exhaustive);
	const CensusReport m = manipulation_census(f, 4, CensusMode::MonteCarlo, 100000, 3, 1);
	CHECK_FALSE(m.exhaustive);
	CHECK(std::abs(m.p_manip - e.p_manip) < 4.0 * m.p_manip_se);
	const CensusReport m2 = manipulation_census(f, 4, CensusMode::MonteCarlo, 100000, 3, 2);
	CHECK(m2.p_manip == m.p_manip);
}

TEST_CASE("pair-swap estimate needs four alternatives")
{
	SocialChoiceFunction f = borda_rule(4, 3);
	const PairEstimate p = manipulation_pair_estimate(f, 20000, 1, 1);
	CHECK(p.p >= 0.0);
	CHECK(p.p <= 1.0);
	CHECK_THROWS_AS(manipulation_pair_estimate(borda_rule(3, 3), 100, 1), std::invalid_argument);
}

TEST_CASE("rules outside the nonmanipulable family have witnesses")
{
	for (auto [k, n] : {std::pair{3, 2}, std::pair{3, 3}}) {
		for (const auto& spec : scf_zoo(k, n)) {
			SocialChoiceFunction f = make_scf(spec, k, n);
			const std::uint32_t range = scf_range(f);
			if (std::popcount(range) < 3 || dictator_on_range(f) >= 0) {
				CHECK_THROWS_AS(gs_witness(f), std::invalid_argument);
				continue;
			}
			const ManipulationRecord m = gs_witness(f);
			CHECK(is_valid_manipulation(f, m));
		}
	}
}

TEST_CASE("top-set dictators and monotone two-valued rules are nonmanipulable")
{
	for (const char* spec : {"dictator:i=2", "top_h:i=1,h=ab", "top_h:i=3,h=abc", "two_valued:a=a,b=b,g=majority",
		     "two_valued:a=a,b=c,g=and", "constant:c=b"}) {
		SocialChoiceFunction f = make_scf(spec, 3, 3);
		const CensusReport c = manipulation_census(f, 3, CensusMode::Exhaustive);
		CHECK(c.p_manip == 0.0);
		CHECK(non_manip_boundary_audit(f).ok());
		CHECK(dist_to_nonmanip(f).combined == doctest::Approx(0.0).epsilon(1e-15));
	}
	// parity is not monotone, so the two-valued rule built on it is manipulable
	SocialChoiceFunction p = make_scf("two_valued:a=a,b=b,g=parity", 3, 2);
	CHECK(manipulation_census(p, 3, CensusMode::Exhaustive).p_manip > 0.0);
}

TEST_CASE("symmetry audits")
{
	for (const char* rule : {"plurality", "borda"}) {
		const SocialChoiceFunction f = make_scf(rule, 3, 3);
		CHECK(anonymity_audit(f).ok());
		const SymmetryAudit ne = neutrality_audit(f);
		CHECK(ne.ok());
		CHECK(ne.skipped_ties > 0);
		CHECK_FALSE(neutrality_audit(f, false).ok());
	}
	CHECK_FALSE(anonymity_audit(dictator_rule(3, 3, 0)).ok());
	CHECK(neutrality_audit(dictator_rule(3, 3, 0)).ok());
}

TEST_CASE("ranking-graph influences")
{
	SocialChoiceFunction f = borda_rule(3, 3);
	const RankingInfluences inf = ranking_influences(f, 1);
	CHECK(inf.consistent());
	const InfluenceBounds b = influence_bounds(inf);
	CHECK(b.sum_inf_var);
	CHECK(b.const_dist);
	CHECK(b.refined_sum);
	// a dictator's own influence is the largest possible and the others vanish
	SocialChoiceFunction d = dictator_rule(3, 2, 0);
	const RankingInfluences di = ranking_influences(d, 1);
	CHECK(di.inf(1) == 0.0);
	CHECK(di.inf(0) > 0.0);
	SocialChoiceFunction c = constant_rule(3, 2, 1);
	CHECK(ranking_influences(c, 1).inf(0) == 0.0);
}

TEST_CASE("fibers and local dictators")
{
	SocialChoiceFunction f = borda_rule(3, 3);
	const auto fib = fiber_census(f, default_fiber_gamma(0.1, 3, 3), 1);
	CHECK(fib.size() == 3 * 3 * 2);
	for (const auto& c : fib) {
		double s = 0.0;
		for (double x : c.fraction)
			s += x;
		CHECK(c.large_mass <= 1.0 + 1e-12);
		CHECK(s >= 0.0);
	}
	SocialChoiceFunction d = dictator_rule(3, 3, 1);
	const LocalDictatorCensus ld = local_dictator_census(d, 1, 1);
	REQUIRE(ld.ld_h.size() == 1);
	CHECK(ld.ld_h[0] == doctest::Approx(1.0));
	CHECK(local_dictator_census(d, 0, 1).ld_h[0] == 0.0);
}

TEST_CASE("max-weight up-set against enumeration of all up-sets")
{
	SplitMix64 rng(4);
	for (int t = 0; t < 30; ++t) {
		std::vector<long long> gain(8);
		for (auto& g : gain)
			g = static_cast<long long>(rng.below(21)) - 10;
		long long best = 0;
		for (std::uint32_t set = 0; set < 256; ++set) {
			bool up = true;
			for (std::uint32_t z = 0; z < 8 && up; ++z)
				if ((set >> z) & 1u)
					for (int b = 0; b < 3; ++b)
						up = up && ((set >> (z | (1u << b))) & 1u);
			if (!up)
				continue;
			long long s = 0;
			for (std::uint32_t z = 0; z < 8; ++z)
				if ((set >> z) & 1u)
					s += gain[z];
			best = std::max(best, s);
		}
		std::vector<std::uint8_t> chosen;
		CHECK(max_gain_upset(gain, &chosen) == best);
	}
}

TEST_CASE("distance to monotone functions, n = 3")
{
	for (std::uint64_t seed = 0; seed < 10; ++seed) {
		const BooleanFunction h = random_function(3, seed).to_zero_one();
		double best = 1.0;
		for (std::uint32_t t = 0; t < 256; ++t) {
			bool mono = true;
			for (std::uint32_t z = 0; z < 8 && mono; ++z)
				for (int b = 0; b < 3; ++b)
					if (((t >> z) & 1u) > ((t >> (z | (1u << b))) & 1u))
						mono = false;
			if (!mono)
				continue;
			int diff = 0;
			for (std::uint32_t z = 0; z < 8; ++z)
				diff += (h[z] > 0.5) != (((t >> z) & 1u) != 0);
			best = std::min(best, diff / 8.0);
		}
		CHECK(boolean_dist_to_monotone(h) == doctest::Approx(best));
		const BooleanFunction s = monotonize_by_sorting(h);
		int diff = 0;
		for (std::uint32_t z = 0; z < 8; ++z)
			diff += s[z] != h[z];
		CHECK(diff / 8.0 >= best - 1e-15);
	}
}

TEST_CASE("distance to the nonmanipulable family for Borda")
{
	SocialChoiceFunction f = borda_rule(3, 2);
	const NonmanipDistance d = dist_to_nonmanip(f, 1);
	CHECK(d.combined > 0.0);
	CHECK(d.combined <= d.top_h);
	CHECK(d.two_valued.dist_exact <= d.two_valued.dist_fiber_majority + 1e-15);
	CHECK(d.two_valued.dist_exact <= d.two_valued.dist_monotonized + 1e-15);
	CHECK(d.two_valued.violation_bound_ok);
	SocialChoiceFunction g = borda_rule(3, 3);
	const GsGate gate = quantitative_gs_gate(g, 1);
	CHECK(gate.ok);
	CHECK(gate.epsilon > 0.0);
}

TEST_CASE("canonical paths")
{
	const RankingTables& t = ranking_tables(4);
	for (std::uint32_t s = 0; s < t.count(); s += 5)
		for (std::uint32_t p = 0; p < t.count(); p += 3) {
			const auto path = canonical_path(t, s, p);
			REQUIRE_FALSE(path.empty());
			CHECK(path.front() == s);
			CHECK(path.back() == p);
			for (std::size_t j = 1; j < path.size(); ++j)
				CHECK(t.span(path[j - 1], path[j]) == 2);
		}
	for (int k : {3, 4}) {
		CHECK(congestion_census(k, 1).ok);
		const CongestionReport v2 = congestion_census(k, 2);
		CHECK(v2.ok);
		CHECK(v2.order_kept);
	}
}

TEST_CASE("edge isoperimetry in powers of complete graphs")
{
	for (int t = 0; t < 10; ++t) {
		const auto a = random_vertex_subset(4, 3, 10 + 4 * t, 100 + t);
		const IsoperimetryResult r = product_complete_graph_isoperimetry(4, 3, a);
		CHECK(r.applicable);
		CHECK(r.ok);
		CHECK(r.boundary >= r.size);
	}
	// a whole sub-cube {x_1 = 0} has boundary exactly |A| (ell - 1)
	std::vector<bool> slab(64, false);
	for (int x = 0; x < 64; ++x)
		slab[static_cast<std::size_t>(x)] = x % 4 == 0;
	const IsoperimetryResult r = product_complete_graph_isoperimetry(4, 3, slab);
	CHECK(r.boundary == 16 * 3);
}

TEST_CASE("SCF1 round trip")
{
	SocialChoiceFunction f = copeland_rule(3, 3);
	std::stringstream ss;
	write_scf1(ss, f);
	SocialChoiceFunction g = read_scf1(ss);
	CHECK(g.k() == 3);
	CHECK(g.n() == 3);
	f.tabulate();
	CHECK(g.table() == f.table());
	std::stringstream bad("SCF0");
	CHECK_THROWS(read_scf1(bad));
}

TEST_CASE("rule spec errors")
{
	CHECK_THROWS_AS(make_scf("nosuch", 3, 2), std::invalid_argument);
	CHECK_THROWS_AS(make_scf("dictator:i=4", 3, 3), std::invalid_argument);
	CHECK_THROWS_AS(make_scf("top_h:i=1,h=d", 3, 3), std::invalid_argument);
	for (const auto& s : scf_zoo(4, 2))
		CHECK_NOTHROW(make_scf(s, 4, 2));
}
