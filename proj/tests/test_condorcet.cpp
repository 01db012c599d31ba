#include <array>
#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "qsc/boolean/biased.hpp"
#include "qsc/boolean/generators.hpp"
#include "qsc/condorcet/arrow.hpp"
#include "qsc/condorcet/constitution.hpp"
#include "qsc/condorcet/source.hpp"
#include "qsc/gaussian/normal.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

namespace {

// Enumerates all 6^n profiles of rankings of {a, b, c}. Each ranking fixes
// the signs of a>b, b>c, c>a; the outcome is cyclic when the three
// aggregated signs coincide.
double paradox_oracle(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h)
{
	const int n = f.n();
	// rankings as positions of a, b, c
	static const int pos[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
	std::uint64_t total = 1;
	for (int i = 0; i < n; ++i)
		total *= 6;
	std::uint64_t cyclic = 0;
	for (std::uint64_t p = 0; p < total; ++p) {
		std::uint64_t x = 0, y = 0, z = 0;
		std::uint64_t rest = p;
		for (int i = 0; i < n; ++i) {
			const int* r = pos[rest % 6];
			rest /= 6;
			if (r[0] < r[1])
				x |= std::uint64_t{1} << i;
			if (r[1] < r[2])
				y |= std::uint64_t{1} << i;
			if (r[2] < r[0])
				z |= std::uint64_t{1} << i;
		}
		if (f[x] == g[y] && g[y] == h[z])
			++cyclic;
	}
	return static_cast<double>(cyclic) / static_cast<double>(total);
}

BooleanFunction random_pm1(int n, std::uint64_t seed)
{
	return random_function(n, seed);
}

} // namespace

TEST_CASE("three-voter majority cycles with probability 1/18")
{
	const BooleanFunction m = majority(3);
	CHECK(paradox_oracle(m, m, m) == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
	CHECK(std::abs(paradox_probability_exhaustive(m, m, m) - 1.0 / 18.0) < 1e-15);
	CHECK(std::abs(paradox_probability_fourier(m, m, m) - 1.0 / 18.0) < 1e-12);
	const Estimate e = paradox_probability_mc(m, m, m, 400000, 5, 1);
	CHECK(std::abs(e.value - 1.0 / 18.0) < 4.0 * e.std_error);
}

TEST_CASE("Fourier identity and enumeration agree with the oracle")
{
	for (int n = 1; n <= 5; ++n)
		for (std::uint64_t seed = 0; seed < 4; ++seed) {
			const BooleanFunction f = random_pm1(n, seed);
			const BooleanFunction g = random_pm1(n, seed + 100);
			const BooleanFunction h = random_pm1(n, seed + 200);
			const double o = paradox_oracle(f, g, h);
			CHECK(paradox_probability_exhaustive(f, g, h) == doctest::Approx(o).epsilon(1e-12));
			CHECK(paradox_probability_fourier(f, g, h) == doctest::Approx(o).epsilon(1e-10));
		}
}

TEST_CASE("majority paradox increases with n")
{
	double prev = 0.0;
	for (int n = 3; n <= 9; n += 2) {
		const BooleanFunction m = majority(n);
		const double p = paradox_probability_exhaustive(m, m, m);
		CHECK(p > prev);
		CHECK(p < guilbaud_constant());
		prev = p;
	}
}

TEST_CASE("mode parsing")
{
	CHECK(paradox_mode_from_string("mc") == ParadoxMode::MonteCarlo);
	CHECK_THROWS_AS(paradox_mode_from_string("exact"), std::invalid_argument);
	const BooleanFunction m = majority(3);
	CHECK(paradox_probability(m, m, m, ParadoxMode::Exhaustive) == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("vote-rule simulation for large electorates")
{
	const Estimate e = paradox_probability_mc(51, majority_vote, majority_vote, majority_vote, 100000, 8, 1);
	CHECK(e.value > 0.07);
	CHECK(e.value < 0.095);
	const Estimate f = paradox_probability_mc(51, majority_vote, majority_vote, majority_vote, 100000, 8, 3);
	CHECK(e.value == f.value);
}

TEST_CASE("Arrow classification")
{
	const BooleanFunction d = dictator(3, 1, 1);
	const ArrowClassification a = classify_arrow(d, d, d);
	CHECK(a.verdict == ArrowVerdict::DictatorTriple);
	CHECK(a.dictator == 1);
	CHECK(a.paradox_probability == 0.0);

	const BooleanFunction plus = constant_function(3, 1);
	const BooleanFunction minus = constant_function(3, -1);
	const ArrowClassification b = classify_arrow(plus, majority(3), minus);
	CHECK(b.verdict == ArrowVerdict::OppositeConstantsPair);
	CHECK(b.paradox_probability == 0.0);

	const ArrowClassification c = classify_arrow(majority(3), majority(3), majority(3));
	CHECK(c.verdict == ArrowVerdict::Paradoxical);
	CHECK(c.paradox_probability == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("only signed dictators avoid the paradox when f = g = h, n = 3")
{
	int free = 0;
	for (std::uint64_t t = 0; t < 256; ++t) {
		const BooleanFunction f = BooleanFunction::tabulate(
			3, [&](std::uint64_t x) { return ((t >> x) & 1u) ? 1 : -1; }, Codomain::PlusMinusOne);
		const double p = paradox_oracle(f, f, f);
		bool dict = false;
		for (int i = 0; i < 3; ++i)
			dict = dict || f == dictator(3, i, 1) || f == dictator(3, i, -1);
		CHECK((p == 0.0) == dict);
		free += p == 0.0;
	}
	CHECK(free == 6);
}

TEST_CASE("balanced FKN route on near-dictators")
{
	const BooleanFunction m = majority(5);
	const BalancedArrowReport k = balanced_arrow_check(m, m, m);
	CHECK(k.balanced);
	CHECK(k.ok);
	const BooleanFunction d = dictator(5, 2, 1);
	const BalancedArrowReport kd = balanced_arrow_check(d, d, d);
	CHECK(kd.applicable);
	CHECK(kd.common_dictator);
	CHECK(kd.ok);
}

TEST_CASE("two influential voters force cycles")
{
	const BooleanFunction f = dictator(4, 0, 1);
	const BooleanFunction g = dictator(4, 1, 1);
	const TwoInfluentialBound b = two_influential_paradox_bound(f, g, make_function("x1_times_majority:n=4"), 0, 1, 0.2);
	CHECK(b.ok);
	CHECK(b.paradox_probability >= b.bound);
	CHECK_THROWS_AS(two_influential_paradox_bound(f, g, f, 0, 0, 0.2), std::invalid_argument);
}

TEST_CASE("Boolean reverse bound on monotone sets")
{
	SplitMix64 rng(12);
	for (int t = 0; t < 20; ++t) {
		// up-sets generated by a few random minimal points
		auto upset = [&] {
			std::vector<std::uint64_t> gens;
			for (int j = 0; j < 3; ++j)
				gens.push_back(rng.below(1u << 8) | rng.below(1u << 8));
			return BooleanFunction::tabulate(
				8,
				[&](std::uint64_t x) {
					for (auto g : gens)
						if ((x & g) == g)
							return 1;
					return -1;
				},
				Codomain::PlusMinusOne);
		};
		const BooleanFunction a = upset();
		const BooleanFunction b = upset();
		CHECK(boolean_reverse_hyp_check(a, b, -1.0 / 3.0).ok);
		CHECK(boolean_reverse_hyp_check(a, b, 0.5).ok);
	}
}

TEST_CASE("uniform constitutions")
{
	const ConstitutionReport m = constitution_check(Constitution::uniform(4, 3, majority(3)));
	CHECK(m.exhaustive);
	CHECK(m.p_nontransitive > 0.0);
	CHECK_FALSE(m.member);
	const ConstitutionReport d = constitution_check(Constitution::uniform(4, 3, dictator(3, 2, 1)));
	CHECK(d.p_nontransitive == 0.0);
	CHECK(d.member);
	// k = 3 uniform majority is the ordinary paradox
	const ConstitutionReport t = constitution_check(Constitution::uniform(3, 3, majority(3)));
	CHECK(t.p_nontransitive == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("partition constitutions are transitive")
{
	const Constitution c = constitution_from_partition(5, 3, {{0, 1, 2}, {3, 4}}, {1, 0}, {1, 1}, majority(3));
	const ConstitutionReport r = constitution_check(c, 100000, 2, 1);
	CHECK(r.p_nontransitive == 0.0);
	CHECK(r.member);
	REQUIRE(r.partition.size() == 2);
	CHECK(r.partition[0].alternatives.size() == 3);
	const auto tri = restrict_to_triple(c, 0, 1, 2);
	CHECK(classify_arrow(tri[0], tri[1], tri[2]).verdict == ArrowVerdict::DictatorTriple);
}
