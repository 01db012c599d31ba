#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"

#include "qsc/aggregation/effects.hpp"
#include "qsc/aggregation/jury.hpp"
#include "qsc/aggregation/tree_ising.hpp"
#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/generators.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

TEST_CASE("jury curve against direct binomial sums")
{
	const JuryCurve c = jury_curve("0.6", {1, 3, 5, 11, 51, 101});
	CHECK(c.strictly_increasing);
	for (const auto& pt : c.points)
		CHECK(pt.probability == doctest::Approx(oracle::majority_correct(pt.n, 0.6)).epsilon(1e-12));
	CHECK(c.points[0].probability == doctest::Approx(0.6));
	CHECK(c.points[0].exact == "3/5");
	CHECK(c.points[1].exact == "81/125");

	const JuryCurve one = jury_curve("1", {1, 3, 5});
	for (const auto& pt : one.points)
		CHECK(pt.probability == 1.0);
	CHECK_FALSE(one.strictly_increasing);
	CHECK_FALSE(jury_curve("2/5", {1, 3, 5}).strictly_increasing);
	CHECK(jury_curve("3/5", {1, 3}).points[1].exact == "81/125");
	CHECK_THROWS_AS(jury_curve("1.5", {1}), std::invalid_argument);
	CHECK_THROWS_AS(jury_curve("0.x", {1}), std::invalid_argument);
	CHECK_THROWS_AS(jury_curve("1/0", {1}), std::invalid_argument);
	// leading zeros are decimal, never octal
	CHECK(jury_curve("0.55", {1}).points[0].exact == "11/20");
	CHECK(jury_curve("0.75", {1}).points[0].exact == "3/4");
	CHECK(jury_curve("0.08", {1}).points[0].exact == "2/25");
	CHECK(jury_curve("007/010", {1}).points[0].exact == "7/10");
	for (const char* p : {"0.55", "0.75", "0.501"}) {
		const JuryCurve up = jury_curve(p, {1, 3, 5, 21, 101});
		CHECK(up.strictly_increasing);
		for (const auto& pt : up.points)
			CHECK(pt.probability == doctest::Approx(oracle::majority_correct(pt.n, std::stod(p))).epsilon(1e-12));
	}
}

TEST_CASE("majority is the optimal estimator of a common signal")
{
	for (double p : {0.55, 0.7, 0.9}) {
		const NeymanPearsonReport r = neyman_pearson_exhaustive(3, p);
		CHECK(r.functions == 256);
		CHECK(r.best == doctest::Approx(oracle::majority_correct(3, p)));
		CHECK(r.majority_value == doctest::Approx(r.best));
		CHECK(r.majority_unique);
		CHECK(r.sign_rule);
	}
	// even n: ties leave several maximizers, all following the sign rule
	const NeymanPearsonReport e = neyman_pearson_exhaustive(2, 0.7);
	CHECK(e.maximizers.size() > 1);
	CHECK(e.sign_rule);
}

TEST_CASE("tribes influences and KKL diagnostics")
{
	for (int r = 1; r <= 4; ++r) {
		const TribesCheck t = tribes_check(r);
		CHECK(t.matches);
		CHECK(t.min_influence == doctest::Approx(tribes_influence_closed_form(r, 1 << r)).epsilon(1e-12));
		if (r > 3)
			continue;
		const BooleanFunction f = tribes(r, 1 << r);
		for (int i = 0; i < f.n(); ++i)
				CHECK(t.max_influence == doctest::Approx(oracle::influence(f, i)).epsilon(1e-12));
	}
	const KklDiagnostic m = kkl_diagnostic(majority(9));
	CHECK(m.n == 9);
	CHECK(m.variance == doctest::Approx(1.0));
	CHECK(m.ratio == doctest::Approx(m.min_influence * 9 / std::log(9.0)));
	const KklDiagnostic d = kkl_diagnostic({1.0, 0.0, 0.0}, 1.0);
	CHECK(d.min_influence == 0.0);
	CHECK(d.ratio == 0.0);
}

TEST_CASE("effects under identical and product measures")
{
	const BooleanFunction maj = majority(5);
	const EffectsReport id = effects(maj, FiniteDistribution::identical_voters(5, 0.3));
	for (int k = 0; k < 5; ++k) {
		CHECK(id.defined[static_cast<std::size_t>(k)]);
		CHECK(id.effect[static_cast<std::size_t>(k)] == doctest::Approx(1.0));
		CHECK(id.pivot_influence[static_cast<std::size_t>(k)] == 0.0);
	}
	CHECK(id.covariance_identity);

	// under a product measure a monotone function's effect is its pivot probability
	const std::vector<double> p{0.2, 0.5, 0.7, 0.9, 0.4};
	const FiniteDistribution mu = FiniteDistribution::product(p);
	CHECK(expectation(maj, mu) == doctest::Approx([&] {
		double s = 0.0;
		for (std::size_t j = 0; j < mu.support.size(); ++j)
			s += mu.weights[j] * (maj[mu.support[j]] > 0);
		return s;
	}()));
	for (const char* spec : {"majority:n=5", "tribes:r=2,m=2", "and:n=5"}) {
		BooleanFunction f = make_function(spec);
		if (f.n() != 5)
			continue;
		const EffectsReport e = effects(f, mu);
		CHECK(e.covariance_identity);
		for (int k = 0; k < 5; ++k) {
			double piv = 0.0;
			for (std::uint64_t x = 0; x < 32; ++x) {
				double w = 1.0;
				for (int i = 0; i < 5; ++i)
					w *= ((x >> i) & 1u) ? p[static_cast<std::size_t>(i)] : 1.0 - p[static_cast<std::size_t>(i)];
				piv += w * (f[x] != f[x ^ (std::uint64_t{1} << k)]);
			}
			CHECK(e.effect[static_cast<std::size_t>(k)] == doctest::Approx(piv).epsilon(1e-12));
			CHECK(e.pivot_influence[static_cast<std::size_t>(k)] == doctest::Approx(piv).epsilon(1e-12));
			CHECK(e.marginal[static_cast<std::size_t>(k)] == doctest::Approx(p[static_cast<std::size_t>(k)]));
		}
	}
}

TEST_CASE("distribution validation and JSON")
{
	FiniteDistribution mu = FiniteDistribution::random(6, 10, 3);
	CHECK_NOTHROW(mu.validate());
	const FiniteDistribution back = distribution_from_json(to_json(mu));
	CHECK(back.support == mu.support);
	CHECK(back.weights == mu.weights);
	const auto j = to_json(FiniteDistribution::identical_voters(3, 0.4));
	CHECK(j["support"][0] == "000");
	CHECK(j["support"][1] == "111");
	FiniteDistribution bad = mu;
	bad.weights[0] += 0.01;
	CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
	nlohmann::json one{{"n", 3}, {"support", {"100"}}, {"weights", {1.0}}};
	CHECK(distribution_from_json(one).marginal(0) == 1.0);
	CHECK(distribution_from_json(one).marginal(1) == 0.0);
}

TEST_CASE("weighted majority bound on random measures")
{
	for (std::uint64_t seed = 1; seed <= 40; ++seed) {
		const int n = 3 + static_cast<int>(seed % 5);
		const FiniteDistribution mu = FiniteDistribution::random(n, std::min<std::size_t>(12, std::size_t{1} << n), seed);
		SplitMix64 rng(seed);
		std::vector<double> w(static_cast<std::size_t>(n));
		for (auto& x : w)
			x = 0.1 + rng.uniform();
		double p = 0.0;
		double W = 0.0;
		for (int i = 0; i < n; ++i) {
			p += w[static_cast<std::size_t>(i)] * mu.marginal(i);
			W += w[static_cast<std::size_t>(i)];
		}
		p /= W;
		const double q = p * rng.uniform();
		if (p - q < 1e-3)
			continue;
		const WeightedMajorityCheck c = weighted_majority_bound_check(w, mu, q);
		CHECK(c.first_condition);
		CHECK(c.second_condition);
		CHECK(c.p == doctest::Approx(p));
		CHECK(c.mu_f >= c.bound - 1e-12);
		CHECK(c.ok);
	}
	const BooleanFunction wm = weighted_majority({1.0, 1.0, 1.0}, 0.5);
	for (std::uint64_t x = 0; x < 8; ++x)
		CHECK((wm[x] > 0.5) == (std::popcount(x) >= 2));
}

TEST_CASE("mixture of biases")
{
	for (double eps : {0.05, 0.2, 0.4}) {
		const MixtureExample m = mixture_of_biases(101, eps);
		CHECK(m.ok);
		CHECK(m.alice_wins < m.bound);
		// for large n the majority follows the side of 1/2 that t falls on
		CHECK(m.alice_wins == doctest::Approx(0.5 / (1.0 - eps)).epsilon(0.01));
	}
	CHECK_THROWS_AS(mixture_of_biases(100, 0.1), std::invalid_argument);
}

TEST_CASE("biased Poincare inequality")
{
	for (std::uint64_t seed = 0; seed < 10; ++seed)
		for (double p : {0.1, 0.5, 0.85}) {
			const PoincareCheck c = biased_poincare(random_function(5, seed), p);
			CHECK(c.ok);
			CHECK(c.influence_sum >= c.variance - 1e-12);
		}
	const PoincareCheck d = biased_poincare(dictator(4, 2), 0.3);
	CHECK(d.influence_sum == doctest::Approx(d.variance));
}

TEST_CASE("dictators minimize the biased mean of monotone balanced functions")
{
	for (int n = 2; n <= 4; ++n)
		for (double p : {0.6, 0.75, 0.9}) {
			const DictatorExtremality d = dictator_minimizers(n, p);
			CHECK(d.only_dictators);
			CHECK(d.minimizers.size() == static_cast<std::size_t>(n));
			CHECK(d.min_value == doctest::Approx(2 * p - 1));
		}
}

namespace {

// Brute force over all labels of the height-2 tree and all leaf votes.
TreeIsingExact tree_oracle_h2(double eps, double delta)
{
	// parent of leaf l is l / 3; internal nodes hang off the root
	double mu = 0.0;
	double y1[2] = {0, 0};
	double y1m[2] = {0, 0};
	double x1[2] = {0, 0};
	double x1m[2] = {0, 0};
	double vote = 0.0;
	for (int root = 0; root < 2; ++root)
		for (int mid = 0; mid < 8; ++mid)
			for (int leaf = 0; leaf < 512; ++leaf) {
				double w = 0.5;
				for (int j = 0; j < 3; ++j)
					w *= (((mid >> j) & 1) != root) ? eps : 1.0 - eps;
				for (int l = 0; l < 9; ++l)
					w *= (((leaf >> l) & 1) != ((mid >> (l / 3)) & 1)) ? eps : 1.0 - eps;
				if (w == 0.0)
					continue;
				for (int x = 0; x < 512; ++x) {
					if ((leaf & ~x) != 0)
						continue;
					double v = w;
					for (int l = 0; l < 9; ++l)
						if (!((leaf >> l) & 1))
							v *= ((x >> l) & 1) ? delta : 1.0 - delta;
					int top = 0;
					for (int b = 0; b < 3; ++b)
						top += std::popcount(static_cast<unsigned>((x >> (3 * b)) & 7)) >= 2;
					const bool m = top >= 2;
					mu += v * m;
					vote += v * (x & 1);
					y1[leaf & 1] += v;
					y1m[leaf & 1] += v * m;
					x1[x & 1] += v;
					x1m[x & 1] += v * m;
				}
			}
	TreeIsingExact e;
	e.mu_m = mu;
	e.effect_y = y1m[1] / y1[1] - y1m[0] / y1[0];
	e.effect_x = x1m[1] / x1[1] - x1m[0] / x1[0];
	e.vote_marginal = vote;
	return e;
}

} // namespace

TEST_CASE("tree recursions against enumeration of the height-two tree")
{
	for (auto [eps, delta] : {std::pair{0.01, 0.01}, std::pair{0.1, 0.05}, std::pair{0.3, 0.2}, std::pair{0.0, 0.1}}) {
		const TreeIsingExact o = tree_oracle_h2(eps, delta);
		const TreeIsingExact e = tree_ising_exact({2, eps, delta});
		CHECK(e.mu_m == doctest::Approx(o.mu_m).epsilon(1e-12));
		CHECK(e.effect_y == doctest::Approx(o.effect_y).epsilon(1e-12));
		CHECK(e.effect_x == doctest::Approx(o.effect_x).epsilon(1e-12));
		CHECK(e.vote_marginal == doctest::Approx(o.vote_marginal).epsilon(1e-12));
	}
	const TreeIsingExact clean = tree_ising_exact({4, 0.0, 0.0});
	CHECK(clean.mu_m == doctest::Approx(0.5));
	CHECK(clean.effect_y == doctest::Approx(1.0));
	CHECK_THROWS_AS(tree_ising_exact({11, 0.01, 0.01}), std::invalid_argument);
	CHECK_THROWS_AS(tree_ising_exact({2, 0.5, 0.01}), std::invalid_argument);
}

TEST_CASE("tree experiment")
{
	const TreeIsingSpec spec{3, 0.01, 0.01};
	const TreeIsingExperiment a = tree_ising_experiment(spec, 60000, 7, 1);
	CHECK(std::abs(a.mu_m - a.exact.mu_m) < 5 * a.mu_m_se);
	CHECK(std::abs(a.effect - a.exact.effect_y) < 5 * a.effect_se);
	CHECK(a.mu_claim_applies);
	CHECK(a.ok());
	CHECK(a.fkg.size() == 28);
	const TreeIsingExperiment b = tree_ising_experiment(spec, 60000, 7, 2);
	CHECK(b.mu_m == a.mu_m);
	CHECK(b.effect == a.effect);
	CHECK_FALSE(tree_ising_mu_claim_applies({3, 0.05, 0.05}));
	CHECK(tree_ising_effect_claim({1, 0.01, 0.01}) == doctest::Approx(2.0));
}
