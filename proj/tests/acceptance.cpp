// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed below. Pass criterion numbers as arguments to run a
// subset.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/aggregation/effects.hpp"
#include "qsc/aggregation/jury.hpp"
#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/fourier.hpp"
#include "qsc/boolean/generators.hpp"
#include "qsc/boolean/properties.hpp"
#include "qsc/boolean/stability.hpp"
#include "qsc/boolean/structure.hpp"
#include "qsc/condorcet/arrow.hpp"
#include "qsc/condorcet/source.hpp"
#include "qsc/dynamics/graph.hpp"
#include "qsc/dynamics/majority.hpp"
#include "qsc/gaussian/normal.hpp"
#include "qsc/gaussian/quadrant.hpp"
#include "qsc/manip/census.hpp"
#include "qsc/manip/paths.hpp"
#include "qsc/manip/ranking.hpp"
#include "qsc/manip/scf.hpp"
#include "qsc/rng.hpp"

using namespace qsc;

namespace {

struct Outcome {
	bool ok = false;
	std::string detail;
};

struct Criterion {
	int id;
	const char* name;
	double limit_s;
	std::function<Outcome()> run;
};

std::string fmt(const char* f, double a)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, f, a);
	return buf;
}

// 6^n enumeration of rankings of three alternatives
double paradox_oracle(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h)
{
	static const int pos[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
	const int n = f.n();
	std::uint64_t total = 1;
	for (int i = 0; i < n; ++i)
		total *= 6;
	std::uint64_t cyclic = 0;
	for (std::uint64_t p = 0; p < total; ++p) {
		std::uint64_t x = 0, y = 0, z = 0, rest = p;
		for (int i = 0; i < n; ++i, rest /= 6) {
			const int* r = pos[rest % 6];
			x |= std::uint64_t{r[0] < r[1]} << i;
			y |= std::uint64_t{r[1] < r[2]} << i;
			z |= std::uint64_t{r[2] < r[0]} << i;
		}
		cyclic += f[x] == g[y] && g[y] == h[z];
	}
	return static_cast<double>(cyclic) / static_cast<double>(total);
}

bool is_signed_dictator(const BooleanFunction& f)
{
	for (int i = 0; i < f.n(); ++i)
		for (int s : {1, -1})
			if (f == dictator(f.n(), i, s))
				return true;
	return false;
}

Outcome guilbaud()
{
	// closed form evaluated independently in long double
	const long double pi = std::numbers::pi_v<long double>;
	const long double ref = 1.0L - 3.0L * std::acos(-1.0L / 3.0L) / (2.0L * pi);
	const double c = guilbaud_constant();
	bool ok = std::abs(static_cast<long double>(c) - ref) < 1e-9L && std::abs(c - 0.088) < 5e-4;
	double prev = -1.0;
	std::ostringstream d;
	for (int n = 1; n <= 11; n += 2) {
		const BooleanFunction m = majority(n);
		const double p = paradox_probability_exhaustive(m, m, m);
		ok = ok && p > prev && p < c;
		prev = p;
	}
	d << "exact(11)=" << fmt("%.6f", prev);
	const VoteRule maj = majority_vote;
	const Estimate e = paradox_probability_mc(101, maj, maj, maj, 1'000'000, 1);
	ok = ok && std::abs(e.value - c) <= 0.005;
	d << " mc(101)=" << fmt("%.5f", e.value) << " const=" << fmt("%.10f", c);
	return {ok, d.str()};
}

Outcome three_voters()
{
	const BooleanFunction m = majority(3);
	const double o = paradox_oracle(m, m, m);
	const double fr = paradox_probability_fourier(m, m, m);
	const double ex = paradox_probability_exhaustive(m, m, m);
	const bool ok = o * 18.0 == 1.0 && std::abs(fr - o) <= 1e-10 && std::abs(ex - o) <= 1e-10;
	return {ok, "oracle=" + fmt("%.12f", o) + " fourier=" + fmt("%.12f", fr)};
}

Outcome dictator_stability()
{
	// every balanced f on 4 coordinates, stability from WHT coefficients
	double best = -1.0;
	std::vector<std::uint32_t> argmax;
	std::uint64_t balanced = 0;
	std::vector<double> v(16);
	for (std::uint32_t t = 0; t < (1u << 16); ++t) {
		if (std::popcount(t) != 8)
			continue;
		++balanced;
		for (int x = 0; x < 16; ++x)
			v[static_cast<std::size_t>(x)] = ((t >> x) & 1u) ? 1.0 : -1.0;
		walsh_hadamard_inplace(v);
		double s = 0.0;
		for (std::uint32_t S = 0; S < 16; ++S) {
			const double c = v[S] / 16.0;
			s += std::pow(0.5, std::popcount(S)) * c * c;
		}
		if (s > best + 1e-12) {
			best = s;
			argmax.clear();
		}
		if (std::abs(s - best) <= 1e-12)
			argmax.push_back(t);
	}
	bool ok = balanced == 12870 && std::abs(best - 0.5) <= 1e-12 && argmax.size() == 8;
	for (std::uint32_t t : argmax) {
		const BooleanFunction f = BooleanFunction::tabulate(
			4, [&](std::uint64_t x) { return ((t >> x) & 1u) ? 1 : -1; }, Codomain::PlusMinusOne);
		ok = ok && is_signed_dictator(f) && std::abs(stability(f, 0.5) - 0.5) <= 1e-12;
	}
	return {ok, "max=" + fmt("%.12f", best) + " maximizers=" + std::to_string(argmax.size())};
}

Outcome arrow_census()
{
	int free = 0;
	bool ok = true;
	for (std::uint32_t t = 0; t < 256; ++t) {
		const BooleanFunction f = BooleanFunction::tabulate(
			3, [&](std::uint64_t x) { return ((t >> x) & 1u) ? 1 : -1; }, Codomain::PlusMinusOne);
		const double p = paradox_probability_exhaustive(f, f, f, 1);
		const bool zero = p == 0.0;
		free += zero;
		ok = ok && zero == is_signed_dictator(f);
		ok = ok && std::abs(p - paradox_oracle(f, f, f)) <= 1e-15;
	}
	return {ok && free == 6, "paradox-free=" + std::to_string(free)};
}

Outcome sheppard_check()
{
	const double target = 1.0 / 3.0;
	const Estimate mc = majority_stability_mc(1001, 0.5, 100'000, 1);
	const double exact15 = majority_stability_exact(15, 0.5);
	const double dense15 = stability(majority(15), 0.5);
	const bool ok = std::abs(sheppard_limit(0.5) - target) <= 1e-15 && std::abs(mc.value - target) <= 0.01
		&& std::abs(exact15 - target) <= 0.03 && std::abs(exact15 - dense15) <= 1e-12;
	return {ok, "mc(1001)=" + fmt("%.5f", mc.value) + " exact(15)=" + fmt("%.6f", exact15)};
}

Outcome hypercontractivity()
{
	SplitMix64 rng(2024);
	const int n = 10;
	bool ok = true;
	double worst = -INFINITY;
	for (int t = 0; t < 1000; ++t) {
		std::vector<double> v(std::size_t{1} << n);
		for (auto& x : v)
			x = rng.normal();
		const NormComparison c = hypercontractivity_check(BooleanFunction(n, std::move(v)), 1.0 / std::sqrt(3.0), 4.0, 2.0);
		worst = std::max(worst, c.lhs - c.rhs);
		ok = ok && c.lhs <= c.rhs + 1e-12;
	}
	const double p = 0.5;
	const double q = 0.25;
	const double rho = std::sqrt((1.0 - p) / (1.0 - q));
	double worst_rev = -INFINITY;
	for (int t = 0; t < 1000; ++t) {
		std::vector<double> v(std::size_t{1} << n);
		for (auto& x : v)
			x = std::exp(2.0 * rng.normal());
		const NormComparison c = reverse_hypercontractivity_check(BooleanFunction(n, std::move(v)), rho, p, q);
		worst_rev = std::max(worst_rev, c.rhs - c.lhs);
		ok = ok && c.lhs >= c.rhs - 1e-12;
	}
	return {ok, "max(lhs-rhs)=" + fmt("%.3g", worst) + " max(rhs-lhs) reverse=" + fmt("%.3g", worst_rev)};
}

// up-closure of a few random points
BooleanFunction random_up_set(int n, SplitMix64& rng)
{
	const int gens = 1 + static_cast<int>(rng.below(5));
	std::vector<std::uint64_t> g;
	for (int j = 0; j < gens; ++j) {
		std::uint64_t x = 0;
		for (int i = 0; i < n; ++i)
			if (rng.bernoulli(0.6))
				x |= std::uint64_t{1} << i;
		g.push_back(x);
	}
	return BooleanFunction::tabulate(
		n,
		[&](std::uint64_t x) {
			for (auto y : g)
				if ((x & y) == y)
					return 1;
			return 0;
		},
		Codomain::ZeroOne);
}

Outcome reverse_boolean()
{
	SplitMix64 rng(77);
	bool ok = true;
	double slack = INFINITY;
	for (int t = 0; t < 100; ++t) {
		const BooleanFunction b1 = random_up_set(10, rng);
		const BooleanFunction b2 = random_up_set(10, rng);
		const SetCorrelationBound r = boolean_reverse_hyp_check(b1, b2, -1.0 / 3.0);
		ok = ok && r.ok && r.p_joint >= r.bound - 1e-12;
		slack = std::min(slack, r.p_joint - r.bound);
	}
	return {ok, "min(joint-bound)=" + fmt("%.4g", slack)};
}

Outcome j_calculus()
{
	const auto grid = interior_grid(19);
	bool ok = true;
	double eig = -INFINITY;
	double excess = -INFINITY;
	double center = 0.0;
	for (double rho : {0.2, 0.5, 0.8}) {
		const JDerivativeReport r = j_rho_derivative_checks(grid, rho, {0.0, rho / 2, rho});
		ok = ok && r.max_eigenvalue <= 1e-6 && r.max_drho_excess <= 1e-6 && r.rows.size() == 19 * 19 * 3;
		eig = std::max(eig, r.max_eigenvalue);
		excess = std::max(excess, r.max_drho_excess);
		const double err = std::abs(j_rho(0.5, 0.5, rho) - (0.25 + std::asin(rho) / (2.0 * std::numbers::pi)));
		center = std::max(center, err);
		ok = ok && err <= 1e-8;
	}
	return {ok, "max_eig=" + fmt("%.3g", eig) + " drho_excess=" + fmt("%.3g", excess) + " center_err=" + fmt("%.2g", center)};
}

Outcome borda_example()
{
	SocialChoiceFunction f = borda_rule(4, 2);
	const Profile truth = parse_profile("abcd,cadb", 4);
	const Profile lie = parse_profile("abcd,cdba", 4);
	ManipulationRecord m;
	m.profile = truth;
	m.voter = 1;
	m.misreport = ranking_tables(4).parse("cdba");
	m.r = ranking_tables(4).span(truth[1], m.misreport);
	m.outcome = f(truth);
	m.manipulated_outcome = f(lie);
	const bool ok = m.outcome == 0 && m.manipulated_outcome == 2 && is_valid_manipulation(f, m)
		&& is_manipulable_at(f, truth).has_value();
	return {ok, describe(m, 4)};
}

Outcome gs_witnesses()
{
	int witnessed = 0;
	int zero = 0;
	bool ok = true;
	for (auto [k, n] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}})
		for (const auto& spec : scf_zoo(k, n)) {
			SocialChoiceFunction f = make_scf(spec, k, n);
			const bool family = spec.rfind("top_h", 0) == 0
				|| (spec.rfind("two_valued", 0) == 0 && spec.find("parity") == std::string::npos) || spec.rfind("dictator", 0) == 0
				|| spec.rfind("constant", 0) == 0;
			if (family) {
				const CensusReport c = manipulation_census(f, k, CensusMode::Exhaustive);
				ok = ok && c.p_manip == 0.0;
				++zero;
			}
			if (std::popcount(scf_range(f)) >= 3 && dictator_on_range(f) < 0) {
				const ManipulationRecord m = gs_witness(f);
				ok = ok && is_valid_manipulation(f, m);
				++witnessed;
			}
		}
	return {ok && witnessed > 0, "witnesses=" + std::to_string(witnessed) + " zero-census rules=" + std::to_string(zero)};
}

Outcome congestion()
{
	bool ok = true;
	std::ostringstream d;
	for (int k : {3, 4}) {
		const CongestionReport v1 = congestion_census(k, 1);
		const double bound = k * k * static_cast<double>(factorial(k)) / 2.0;
		ok = ok && v1.ok && static_cast<double>(v1.max_vertex) <= bound;
		const CongestionReport v2 = congestion_census(k, 2);
		ok = ok && v2.ok && v2.order_kept;
		d << "k=" << k << " congestion=" << v1.max_vertex << "<=" << bound << " ";
	}
	return {ok, d.str()};
}

Outcome isoperimetry()
{
	SplitMix64 rng(6);
	bool ok = true;
	std::uint64_t tight = 0;
	for (int t = 0; t < 100; ++t) {
		const std::uint64_t size = 1 + rng.below(180);
		const auto a = random_vertex_subset(6, 3, size, 1000 + static_cast<std::uint64_t>(t));
		const IsoperimetryResult r = product_complete_graph_isoperimetry(6, 3, a);
		ok = ok && r.applicable && r.size == size && r.boundary >= r.size;
		tight += r.boundary == r.size;
	}
	return {ok, "sets=100 equality cases=" + std::to_string(tight)};
}

Outcome goles_olivos()
{
	bool ok = true;
	int period2 = 0;
	for (std::uint64_t g = 0; g < 50; ++g) {
		const OpinionGraph graph = random_regular_graph(3, 100, 500 + g);
		for (std::uint64_t i = 0; i < 10; ++i) {
			const DynamicsTrace tr = run_to_period(graph, random_state(100, 0.5, 1000 * g + i));
			ok = ok && tr.period <= 2 && tr.energy_nonincreasing && tr.energy_identity;
			for (std::size_t t = 1; t < tr.energy.size(); ++t)
				ok = ok && tr.energy[t] - tr.energy[t - 1] == -tr.coupling[t];
			period2 += tr.period == 2;
		}
	}
	return {ok, "runs=500 period-2 orbits=" + std::to_string(period2)};
}

Outcome jury()
{
	std::vector<int> ns;
	for (int n = 1; n <= 101; n += 2)
		ns.push_back(n);
	bool ok = true;
	for (const char* p : {"0.55", "0.6", "0.75"}) {
		const JuryCurve c = jury_curve(p, ns);
		ok = ok && c.strictly_increasing && std::abs(c.points[0].probability - std::stod(p)) <= 1e-15;
	}
	const NeymanPearsonReport np = neyman_pearson_exhaustive(3, 0.6);
	ok = ok && np.functions == 256 && np.majority_unique && std::abs(np.best - 0.648) <= 1e-12;
	return {ok, "np best=" + fmt("%.6f", np.best)};
}

Outcome tribes_kkl()
{
	bool ok = true;
	std::ostringstream d;
	for (int r = 1; r <= 4; ++r) {
		const TribesCheck t = tribes_check(r);
		ok = ok && t.matches && t.max_abs_error <= 1e-12 * t.closed_form;
		if (r >= 2) {
			ok = ok && t.kkl.ratio >= 0.2 && t.kkl.ratio <= 2.0;
			d << "tribes r=" << r << " ratio=" << fmt("%.3f", t.kkl.ratio) << " ";
		}
	}
	// every zoo member has a coordinate of influence >= 0.2 Var ln n / n
	double lowest = INFINITY;
	for (const auto& spec : function_zoo(12)) {
		const BooleanFunction f = make_function(spec);
		if (f.n() < 2 || f.variance() == 0.0)
			continue;
		const auto inf = influences(f);
		const double top = *std::max_element(inf.begin(), inf.end());
		const double ratio = top * f.n() / (f.variance() * std::log(f.n()));
		lowest = std::min(lowest, ratio);
	}
	ok = ok && lowest >= 0.2;
	d << "zoo min ratio=" << fmt("%.3f", lowest);
	return {ok, d.str()};
}

Outcome fkn()
{
	bool ok = true;
	std::ostringstream d;
	for (int flips : {1, 4, 16}) {
		const double eps = flips / 256.0;
		std::vector<double> v = dictator(8, 5, 1).values();
		for (int j = 0; j < flips; ++j)
			v[static_cast<std::size_t>(j * 37 % 256)] *= -1.0;
		const FknReport r = fkn_analysis(BooleanFunction(8, std::move(v), Codomain::PlusMinusOne));
		ok = ok && r.dictator == 5 && r.sign == 1 && r.distance == eps && r.level1_weight >= 1.0 - 8.0 * eps;
		d << "eps=" << eps << " W1=" << fmt("%.4f", r.level1_weight) << " ";
	}
	return {ok, d.str()};
}

Outcome effects_chapter()
{
	const EffectsReport e = effects(majority(3), FiniteDistribution::identical_voters(3, 0.5));
	bool ok = e.covariance_identity;
	for (int k = 0; k < 3; ++k)
		ok = ok && e.effect[static_cast<std::size_t>(k)] == 1.0 && e.pivot_influence[static_cast<std::size_t>(k)] == 0.0;
	int checked = 0;
	double margin = INFINITY;
	for (std::uint64_t seed = 1; checked < 20; ++seed) {
		const int n = 3 + static_cast<int>(seed % 6);
		const FiniteDistribution mu = FiniteDistribution::random(n, std::min<std::size_t>(16, std::size_t{1} << n), seed);
		SplitMix64 rng(seed);
		std::vector<double> w(static_cast<std::size_t>(n));
		for (auto& x : w)
			x = 0.2 + rng.uniform();
		double p = 0.0;
		double W = 0.0;
		for (int i = 0; i < n; ++i) {
			p += w[static_cast<std::size_t>(i)] * mu.marginal(i);
			W += w[static_cast<std::size_t>(i)];
		}
		p /= W;
		const double q = p / 2.0;
		if (p - q < 1e-3)
			continue;
		const WeightedMajorityCheck c = weighted_majority_bound_check(w, mu, q);
		ok = ok && c.ok && c.first_condition && c.second_condition;
		margin = std::min(margin, c.mu_f - c.bound);
		++checked;
	}
	return {ok, "measures=" + std::to_string(checked) + " min(mu-bound)=" + fmt("%.4g", margin)};
}

} // namespace

int main(int argc, char** argv)
{
	const std::vector<Criterion> all{
		{1, "guilbaud-limit", 60, guilbaud},
		{2, "three-voter-paradox", 1, three_voters},
		{3, "dictator-extremality", 300, dictator_stability},
		{4, "arrow-exhaustive", 10, arrow_census},
		{5, "sheppard", 60, sheppard_check},
		{6, "hypercontractivity", 60, hypercontractivity},
		{7, "reverse-hyp-boolean", 30, reverse_boolean},
		{8, "j-calculus", 60, j_calculus},
		{9, "borda-example", 0.001, borda_example},
		{10, "gs-witness", 120, gs_witnesses},
		{11, "path-congestion", 30, congestion},
		{12, "isoperimetry", 10, isoperimetry},
		{13, "majority-dynamics", 30, goles_olivos},
		{14, "jury-monotonicity", 30, jury},
		{15, "tribes-kkl", 30, tribes_kkl},
		{16, "fkn-recovery", 10, fkn},
		{17, "effects", 10, effects_chapter},
	};
	std::set<int> only;
	for (int i = 1; i < argc; ++i)
		only.insert(std::stoi(argv[i]));
	int failed = 0;
	for (const auto& c : all) {
		if (!only.empty() && !only.count(c.id))
			continue;
		const auto t0 = std::chrono::steady_clock::now();
		Outcome o;
		try {
			o = c.run();
		} catch (const std::exception& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
		const bool in_time = secs < c.limit_s;
		const bool pass = o.ok && in_time;
		failed += !pass;
		std::printf("%s %2d %-22s %s [%.3f s / %g s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
			c.limit_s, in_time ? "" : ", over time");
		std::fflush(stdout);
	}
	return failed == 0 ? 0 : 1;
}
