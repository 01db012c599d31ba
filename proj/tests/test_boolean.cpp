#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/biased.hpp"
#include "qsc/boolean/fourier.hpp"
#include "qsc/boolean/generators.hpp"
#include "qsc/boolean/io.hpp"
#include "qsc/boolean/properties.hpp"
#include "qsc/boolean/stability.hpp"
#include "qsc/boolean/structure.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

namespace {

BooleanFunction random_real(int n, std::uint64_t seed, double lo = -1.0, double hi = 1.0)
{
	SplitMix64 rng = stream(seed, 3);
	std::vector<double> v(std::size_t{1} << n);
	for (auto& x : v)
		x = lo + (hi - lo) * rng.uniform();
	return BooleanFunction(n, std::move(v));
}

} // namespace

TEST_CASE("transform matches the defining sum")
{
	for (const char* spec : {"majority:n=5", "tribes:r=2,m=2", "x1_times_majority:n=4", "random:n=6,seed=9"}) {
		const BooleanFunction f = make_function(spec);
		const FourierExpansion c = wht(f);
		for (std::uint64_t S = 0; S < f.size(); ++S)
			CHECK(c[S] == doctest::Approx(oracle::fourier_coefficient(f, S)).epsilon(1e-12));
		const BooleanFunction back = inverse_wht(c, f.codomain());
		for (std::uint64_t x = 0; x < f.size(); ++x)
			CHECK(back[x] == doctest::Approx(f[x]));
	}
}

TEST_CASE("Parseval and the level-weight split")
{
	const BooleanFunction f = random_real(7, 1);
	const FourierExpansion c = wht(f);
	double sq = 0.0;
	for (double v : f.values())
		sq += v * v;
	CHECK(c.total_weight() == doctest::Approx(sq / 128.0).epsilon(1e-12));
	double lw = 0.0;
	for (double w : c.level_weights())
		lw += w;
	CHECK(lw == doctest::Approx(c.total_weight()));
}

TEST_CASE("influences: pivots, Fourier and the brute-force oracle agree")
{
	for (const char* spec : {"majority:n=7", "tribes:r=3,m=2", "parity:n=5", "dictator:n=4,i=3", "random:n=8,seed=4"}) {
		const BooleanFunction f = make_function(spec);
		const auto inf = influences(f);
		const auto fi = influences_fourier(wht(f));
		for (int i = 0; i < f.n(); ++i) {
			const double o = oracle::influence(f, i);
			CHECK(inf[static_cast<std::size_t>(i)] == doctest::Approx(o).epsilon(1e-12));
			CHECK(fi[static_cast<std::size_t>(i)] == doctest::Approx(o).epsilon(1e-12));
			CHECK(pivot_probability(f, i) == doctest::Approx(o).epsilon(1e-12));
		}
	}
}

TEST_CASE("named influence values")
{
	// majority_3: each voter pivotal when the others split, probability 1/2
	for (double v : influences(majority(3)))
		CHECK(v == doctest::Approx(0.5));
	for (double v : influences(parity(6)))
		CHECK(v == doctest::Approx(1.0));
	const auto d = influences(dictator(5, 2));
	CHECK(d[2] == 1.0);
	CHECK(d[0] == 0.0);
}

TEST_CASE("tribes influences follow the closed form")
{
	for (int r = 1; r <= 3; ++r)
		for (int m = 1; r * m <= 12; ++m) {
			const auto inf = influences(tribes(r, m));
			for (double v : inf)
				CHECK(v == doctest::Approx(tribes_influence_closed_form(r, m)).epsilon(1e-12));
		}
}

TEST_CASE("noisy inner product against the transition-kernel oracle")
{
	const BooleanFunction f = make_function("random:n=5,seed=2");
	const BooleanFunction g = majority(5);
	for (double rho : {-0.7, -0.2, 0.0, 0.3, 0.9}) {
		const double o = oracle::noisy_inner(f, g, rho);
		CHECK(noisy_inner_product(f, g, rho) == doctest::Approx(o).epsilon(1e-12));
		CHECK(noisy_inner_product(wht(f), wht(g), rho) == doctest::Approx(o).epsilon(1e-12));
	}
}

TEST_CASE("noise operator: Fourier route equals the direct average")
{
	const BooleanFunction f = random_real(6, 8);
	for (double rho : {-0.5, 0.25, 0.8}) {
		const BooleanFunction a = noise_operator(f, rho);
		const BooleanFunction b = noise_operator_direct(f, rho);
		for (std::uint64_t x = 0; x < f.size(); ++x)
			CHECK(a[x] == doctest::Approx(b[x]).epsilon(1e-12));
	}
}

TEST_CASE("Monte-Carlo stability is seed-deterministic and thread-independent")
{
	const BooleanFunction f = majority(9);
	const Estimate a = noisy_inner_product_mc(f, f, 0.5, 50000, 11, 1);
	const Estimate b = noisy_inner_product_mc(f, f, 0.5, 50000, 11, 3);
	CHECK(a.value == b.value);
	CHECK(a.std_error == b.std_error);
	CHECK(std::abs(a.value - stability(f, 0.5)) < 4.0 * a.std_error);
}

TEST_CASE("exact majority stability matches the dense value and tends to the arcsine law")
{
	for (int n = 1; n <= 13; n += 2)
		for (double rho : {-0.4, 0.3, 0.5, 0.95})
			CHECK(majority_stability_exact(n, rho) == doctest::Approx(stability(majority(n), rho)).epsilon(1e-12));
	CHECK(std::abs(majority_stability_exact(2001, 0.5) - 1.0 / 3.0) < 1e-3);
	CHECK(sheppard_limit(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
	CHECK(sheppard_limit(0.0) == doctest::Approx(0.0));
}

TEST_CASE("stability curves")
{
	const StabilityCurve m = stability_curve("majority", 0.5, {1, 3, 5, 7, 9, 11});
	REQUIRE(m.values.size() == 6);
	CHECK(m.values[0] == doctest::Approx(0.5));
	CHECK(m.has_limit);
	CHECK(m.monotone_toward_limit);
	// h levels of majority_3: stability follows the one-step map
	const StabilityCurve rm = stability_curve("recursive_majority", 0.9, {1, 2, 3});
	double s = 0.9;
	for (std::size_t h = 0; h < 3; ++h) {
		s = 0.75 * s + 0.25 * s * s * s;
		CHECK(rm.values[h] == doctest::Approx(s).epsilon(1e-12));
	}
	const StabilityCurve ec = stability_curve("electoral_college", 0.5, {1, 3});
	CHECK(ec.values[1] == doctest::Approx(stability(electoral_college(3), 0.5)).epsilon(1e-12));
}

TEST_CASE("recursive majority and electoral college tables")
{
	const BooleanFunction rm = recursive_majority(3, 2);
	const BooleanFunction ec = electoral_college(3);
	for (std::uint64_t x = 0; x < rm.size(); ++x) {
		int votes = 0;
		for (int j = 0; j < 3; ++j)
			votes += std::popcount((x >> (3 * j)) & 7u) >= 2 ? 1 : -1;
		CHECK(rm[x] == (votes > 0 ? 1 : -1));
		CHECK(ec[x] == rm[x]);
	}
}

TEST_CASE("forward hypercontractivity on random functions")
{
	for (std::uint64_t seed = 0; seed < 40; ++seed) {
		const BooleanFunction f = random_real(8, seed);
		const NormComparison c = hypercontractivity_check(f, 1.0 / std::sqrt(3.0), 4.0, 2.0);
		CHECK(c.ok);
	}
	CHECK_THROWS_AS(hypercontractivity_check(majority(3), 0.9, 4.0, 2.0), std::domain_error);
}

TEST_CASE("reverse hypercontractivity on positive functions")
{
	const double rho = std::sqrt((1.0 - 0.5) / (1.0 - 0.25));
	for (std::uint64_t seed = 0; seed < 40; ++seed) {
		const BooleanFunction f = random_real(7, seed, 0.01, 3.0);
		CHECK(reverse_hypercontractivity_check(f, rho, 0.5, 0.25).ok);
	}
	CHECK_THROWS_AS(reverse_hypercontractivity_check(majority(3), 0.1, 0.5, 0.25), std::domain_error);
}

TEST_CASE("noisy influence sum stays below 1/(1-|rho|)")
{
	for (const char* spec : {"parity:n=8", "majority:n=9", "random:n=8,seed=3"})
		for (double rho : {-0.9, -0.5, 0.5, 0.99})
			CHECK(noisy_influence_sum_bound(make_function(spec), rho).ok);
}

TEST_CASE("martingale increments are orthogonal")
{
	for (const char* spec : {"majority:n=7", "tribes:r=2,m=3", "random:n=7,seed=5"}) {
		const MartingaleDeltaReport m = martingale_delta(make_function(spec));
		CHECK(m.orthogonality_ok);
		CHECK(m.increment_bound_ok);
		double sq = 0.0;
		for (double v : m.square_increments)
			sq += v;
		CHECK(sq == doctest::Approx(m.variance).epsilon(1e-12));
	}
	CHECK_THROWS_AS(martingale_delta(majority(3), {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("resilience of parity and majority")
{
	// parity is unaffected by fixing fewer than n coordinates
	CHECK(is_resilient(parity(6), 5, 0.0).resilient);
	CHECK_FALSE(is_resilient(parity(6), 6, 0.5).resilient);
	// conditioning one voter of majority_3 moves the mean by 1/2
	const ResilienceVerdict v = is_resilient(majority(3), 1, 0.49);
	CHECK_FALSE(v.resilient);
	CHECK(v.worst_deviation == doctest::Approx(0.5));
	CHECK(is_resilient(majority(3), 1, 0.5).resilient);
}

TEST_CASE("biased measures, Russo and Poincare")
{
	const BooleanFunction m = majority(3);
	// P_p[maj = 1] = 3p^2 - 2p^3, so E_p = 2(3p^2 - 2p^3) - 1
	for (double p : {0.2, 0.5, 0.7}) {
		const BiasedMeasure mu(3, p);
		CHECK(biased_expectation(m, mu) == doctest::Approx(2.0 * (3 * p * p - 2 * p * p * p) - 1.0));
		double sum = 0.0;
		for (int i = 0; i < 3; ++i)
			sum += biased_influence(m, mu, i);
		CHECK(sum >= biased_variance(m, mu) - 1e-12);
	}
	CHECK(russo_derivative_check(m).ok);
	CHECK(is_monotone(m));
	CHECK_FALSE(is_monotone(parity(3)));
	CHECK_THROWS_AS(russo_derivative_check(parity(3)), std::invalid_argument);
}

TEST_CASE("greedy coalition raises the mean step by step")
{
	const CoalitionTrace t = greedy_coalition(majority(9), 5);
	CHECK(t.nondecreasing);
	CHECK(t.step_bound_ok);
	CHECK(t.means.back() == doctest::Approx(1.0));
}

TEST_CASE("decision-tree regularisation")
{
	for (const char* spec : {"majority:n=9", "tribes:r=2,m=4", "dictator:n=6,i=1"}) {
		const DecisionTree t = decision_tree_regularize(make_function(spec), 0.3, 0.2);
		CHECK(t.ok);
		double mass = 0.0;
		for (const auto& node : t.nodes)
			if (node.var < 0)
				mass += node.mass;
		CHECK(mass == doctest::Approx(1.0));
	}
}

TEST_CASE("FKN finds a corrupted dictator")
{
	const int n = 8;
	for (int flips : {1, 4, 16}) {
		std::vector<double> v = dictator(n, 3, -1).values();
		for (int j = 0; j < flips; ++j)
			v[static_cast<std::size_t>(j * 13 % 256)] *= -1.0;
		const FknReport r = fkn_analysis(BooleanFunction(n, v, Codomain::PlusMinusOne));
		CHECK(r.dictator == 3);
		CHECK(r.sign == -1);
		CHECK(r.distance == doctest::Approx(flips / 256.0));
		CHECK(r.ok);
	}
}

TEST_CASE("fourth moment of degree-2 forms")
{
	std::vector<std::vector<double>> q(6, std::vector<double>(6, 0.0));
	SplitMix64 rng(5);
	for (int i = 0; i < 6; ++i)
		for (int j = i + 1; j < 6; ++j)
			q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = rng.normal();
	const FourthMoment m = degree2_fourth_moment_check(q);
	CHECK(m.ok);
	CHECK(m.fourth <= m.bound);
}

TEST_CASE("JSON and binary round trips")
{
	const BooleanFunction f = make_function("tribes:r=2,m=3");
	CHECK(function_from_json(to_json(f)) == f);
	std::stringstream ss;
	write_bfn1(ss, f);
	CHECK(read_bfn1(ss) == f);
	std::stringstream bad("XXXX");
	CHECK_THROWS(read_bfn1(bad));
}

TEST_CASE("generator errors")
{
	CHECK_THROWS_AS(make_function("majority:n=4"), std::invalid_argument);
	CHECK_THROWS_AS(make_function("nosuch:n=3"), std::invalid_argument);
	CHECK_THROWS_AS(make_function("majority:n=3,q=1"), std::invalid_argument);
	CHECK_THROWS(BooleanFunction::check_arity(kMaxDenseArity + 1));
	CHECK_FALSE(function_zoo(6).empty());
	for (const auto& s : function_zoo(8))
		CHECK_NOTHROW(make_function(s));
}
