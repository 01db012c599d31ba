#include <cmath>
#include <fstream>
#include <memory>

#include "report.hpp"

#include "qsc/aggregation/effects.hpp"
#include "qsc/aggregation/jury.hpp"
#include "qsc/aggregation/tree_ising.hpp"
#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/biased.hpp"
#include "qsc/boolean/generators.hpp"

namespace qsc::cli {

namespace {

std::vector<int> odd_up_to(int n)
{
	std::vector<int> v;
	for (int i = 1; i <= n; i += 2)
		v.push_back(i);
	return v;
}

double decimal_or_fraction(const std::string& s)
{
	const auto slash = s.find('/');
	if (slash == std::string::npos)
		return std::stod(s);
	return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

struct JuryArgs {
	std::string p = "0.6";
	std::vector<int> ns = odd_up_to(101);
};

struct NpArgs {
	int n = 3;
	double p = 0.6;
};

struct FunctionArgs {
	std::string f;
	int n = 0;
};

struct TribesArgs {
	std::vector<int> rs{2, 3, 4};
};

struct EffectsArgs {
	std::string f = "maj";
	int n = 3;
	std::string dist;
	double identical = -1.0;
	std::vector<double> product;
};

struct WeightedBoundArgs {
	std::vector<double> weights;
	std::string dist;
	double q = 0.5;
	double p = -1.0;
	double delta = -1.0;
};

struct MixtureArgs {
	std::vector<int> ns{1, 11, 101, 1001};
	double eps = 0.1;
	int grid = 10000;
};

struct TreeArgs {
	int r = 3;
	double eps = 0.01;
	double delta = 0.01;
	std::uint64_t samples = 100000;
};

struct MinArgs {
	int n = 3;
	std::vector<double> ps{0.6, 0.75, 0.9};
};

struct CoalitionArgs {
	std::string f;
	int n = 0;
	int budget = 0;
};

FiniteDistribution load_distribution(const std::string& path)
{
	std::ifstream is(path);
	if (!is)
		throw std::invalid_argument("cannot open distribution " + path);
	return distribution_from_json(nlohmann::json::parse(is));
}

void run_effects(const EffectsArgs& a, Report& r)
{
	const BooleanFunction f = resolve_function(a.f, a.n);
	r.inputs["f"] = a.f;
	FiniteDistribution mu;
	if (!a.dist.empty()) {
		r.inputs["dist"] = a.dist;
		mu = load_distribution(a.dist);
	} else if (a.identical >= 0.0) {
		r.inputs["identical"] = a.identical;
		mu = FiniteDistribution::identical_voters(f.n(), a.identical);
	} else {
		std::vector<double> p = a.product;
		if (p.empty())
			p.assign(static_cast<std::size_t>(f.n()), 0.5);
		if (p.size() == 1)
			p.assign(static_cast<std::size_t>(f.n()), p[0]);
		r.inputs["product"] = p;
		mu = FiniteDistribution::product(p);
	}
	const EffectsReport e = effects(f, mu);
	r.results["expectation"] = expectation(f, mu);
	r.results["marginal"] = e.marginal;
	r.results["effect"] = e.effect;
	r.results["pivot_influence"] = e.pivot_influence;
	std::vector<int> defined(e.defined.begin(), e.defined.end());
	r.results["defined"] = defined;
	r.csv_header({"k", "marginal", "effect", "defined", "covariance", "pivot_influence"});
	for (std::size_t k = 0; k < e.effect.size(); ++k)
		r.csv_row({std::to_string(k + 1), num(e.marginal[k]), num(e.effect[k]), e.defined[k] ? "1" : "0",
			num(e.covariance[k]), num(e.pivot_influence[k])});
	r.gate("covariance_identity", e.covariance_identity);
}

} // namespace

void add_aggregate(CLI::App& app, Context& ctx)
{
	CLI::App* g = group(app, "aggregate", "Jury theorems, KKL diagnostics and effects under correlated signals");

	auto ju = std::make_shared<JuryArgs>();
	CLI::App* s = leaf(*g, ctx, "jury", "exact probability that majority is correct", [ju](Report& r) {
		r.inputs["p"] = ju->p;
		r.inputs["n"] = ju->ns;
		const JuryCurve c = jury_curve(ju->p, ju->ns);
		std::vector<double> probs;
		r.csv_header({"n", "probability", "exact"});
		for (const auto& pt : c.points) {
			probs.push_back(pt.probability);
			r.csv_row({std::to_string(pt.n), num(pt.probability), pt.exact});
		}
		r.results["probability"] = probs;
		r.results["strictly_increasing"] = c.strictly_increasing;
		if (!c.points.empty())
			r.results["last_exact"] = c.points.back().exact;
		const double p = decimal_or_fraction(ju->p);
		bool odd_sorted = true;
		for (std::size_t i = 0; i < ju->ns.size(); ++i)
			odd_sorted = odd_sorted && ju->ns[i] % 2 == 1 && (i == 0 || ju->ns[i] > ju->ns[i - 1]);
		if (odd_sorted && p > 0.5 && p < 1.0)
			r.gate("strictly_increasing", c.strictly_increasing);
	});
	s->add_option("--p", ju->p, "signal accuracy, decimal or fraction")->capture_default_str();
	s->add_option("--n", ju->ns, "jury sizes (default 1,3,...,101)")->delimiter(',');

	auto np = std::make_shared<NpArgs>();
	s = leaf(*g, ctx, "neyman-pearson", "best rule among all functions of n signals", [np](Report& r) {
		r.inputs["n"] = np->n;
		r.inputs["p"] = np->p;
		const NeymanPearsonReport rep = neyman_pearson_exhaustive(np->n, np->p);
		r.results["functions"] = rep.functions;
		r.results["best"] = rep.best;
		r.results["majority_value"] = rep.majority_value;
		r.results["maximizers"] = rep.maximizers;
		r.gate("sign_rule", rep.sign_rule);
		if (np->n % 2 == 1)
			r.gate("majority_unique", rep.majority_unique);
	});
	s->add_option("--n", np->n)->capture_default_str();
	s->add_option("--p", np->p)->capture_default_str();

	auto kk = std::make_shared<FunctionArgs>();
	s = leaf(*g, ctx, "kkl", "minimum influence against Var log n / n", [kk](Report& r) {
		r.inputs["f"] = kk->f;
		const BooleanFunction f = resolve_function(kk->f, kk->n);
		const KklDiagnostic k = kkl_diagnostic(f);
		r.results["n"] = k.n;
		r.results["min_influence"] = k.min_influence;
		r.results["variance"] = k.variance;
		r.results["ratio"] = k.ratio;
	});
	s->add_option("--f", kk->f)->required();
	s->add_option("--n", kk->n);

	auto tr = std::make_shared<TribesArgs>();
	s = leaf(*g, ctx, "tribes", "tribes influences against the closed form", [tr](Report& r) {
		r.inputs["r"] = tr->rs;
		bool all = true;
		r.csv_header({"r", "m", "min_influence", "max_influence", "closed_form", "kkl_ratio"});
		nlohmann::json rows = nlohmann::json::array();
		for (int w : tr->rs) {
			const TribesCheck c = tribes_check(w);
			all = all && c.matches;
			rows.push_back({{"r", c.r}, {"m", c.m}, {"influence", c.max_influence}, {"closed_form", c.closed_form},
				{"max_abs_error", c.max_abs_error}, {"kkl_ratio", c.kkl.ratio}});
			r.csv_row({std::to_string(c.r), std::to_string(c.m), num(c.min_influence), num(c.max_influence),
				num(c.closed_form), num(c.kkl.ratio)});
		}
		r.results["tribes"] = rows;
		r.gate("closed_form", all);
	});
	s->add_option("--r", tr->rs)->delimiter(',');

	auto ef = std::make_shared<EffectsArgs>();
	s = leaf(*g, ctx, "effects", "conditional effects and pivot influences under a finite measure",
		[ef](Report& r) { run_effects(*ef, r); });
	s->add_option("--f", ef->f)->capture_default_str();
	s->add_option("--n", ef->n)->capture_default_str();
	CLI::Option* d = s->add_option("--dist", ef->dist, "JSON {support, weights}");
	CLI::Option* id = s->add_option("--identical", ef->identical, "all voters share one signal, 1 with this probability");
	CLI::Option* pr = s->add_option("--product", ef->product, "independent voters (one bias or one per voter)")->delimiter(',');
	d->excludes(id)->excludes(pr);
	id->excludes(pr);

	auto le = std::make_shared<WeightedBoundArgs>();
	s = leaf(*g, ctx, "weighted-bound", "lower bound on a weighted majority from bounded effects", [le](Report& r) {
		r.inputs["dist"] = le->dist;
		r.inputs["q"] = le->q;
		const FiniteDistribution mu = load_distribution(le->dist);
		std::vector<double> w = le->weights;
		if (w.empty())
			w.assign(static_cast<std::size_t>(mu.n), 1.0);
		r.inputs["weights"] = w;
		const WeightedMajorityCheck c = weighted_majority_bound_check(w, mu, le->q, le->p, le->delta);
		r.results["mu_f"] = c.mu_f;
		r.results["p"] = c.p;
		r.results["delta"] = c.delta;
		r.results["bound"] = c.bound;
		r.results["first_condition"] = c.first_condition;
		r.results["second_condition"] = c.second_condition;
		if (c.first_condition && c.second_condition)
			r.gate("bound", c.ok);
	});
	s->add_option("--dist", le->dist, "JSON {support, weights}")->required();
	s->add_option("--weights", le->weights)->delimiter(',');
	s->add_option("--q", le->q)->capture_default_str();
	s->add_option("--p", le->p, "weighted mean signal (default: computed)");
	s->add_option("--delta", le->delta, "effect level (default: smallest admissible)");

	auto mi = std::make_shared<MixtureArgs>();
	s = leaf(*g, ctx, "mixture", "majority under a uniformly mixed bias", [mi](Report& r) {
		r.inputs["n"] = mi->ns;
		r.inputs["eps"] = mi->eps;
		r.inputs["grid"] = mi->grid;
		bool all = true;
		std::vector<double> wins;
		r.csv_header({"n", "alice_wins", "bound"});
		double bound = 0.0;
		for (int n : mi->ns) {
			const MixtureExample m = mixture_of_biases(n, mi->eps, mi->grid);
			wins.push_back(m.alice_wins);
			bound = m.bound;
			all = all && m.ok;
			r.csv_row({std::to_string(n), num(m.alice_wins), num(m.bound)});
		}
		r.results["alice_wins"] = wins;
		r.results["bound"] = bound;
		r.gate("below_bound", all);
	});
	s->add_option("--n", mi->ns)->delimiter(',');
	s->add_option("--eps", mi->eps)->capture_default_str();
	s->add_option("--grid", mi->grid)->capture_default_str();

	auto te = std::make_shared<TreeArgs>();
	s = leaf(*g, ctx, "tree-ising", "recursive majority of tree broadcast votes", [te, &ctx](Report& r) {
		const TreeIsingSpec spec{te->r, te->eps, te->delta};
		r.inputs["r"] = te->r;
		r.inputs["eps"] = te->eps;
		r.inputs["delta"] = te->delta;
		r.inputs["samples"] = te->samples;
		const TreeIsingExperiment x = tree_ising_experiment(spec, te->samples, ctx.options.seed, ctx.options.threads);
		r.results["mu_m"] = x.mu_m;
		r.results["mu_m_se"] = x.mu_m_se;
		r.results["effect"] = x.effect;
		r.results["effect_se"] = x.effect_se;
		r.results["exact"] = {{"mu_m", x.exact.mu_m}, {"effect_y", x.exact.effect_y}, {"effect_x", x.exact.effect_x},
			{"vote_marginal", x.exact.vote_marginal}};
		r.results["mu_claim"] = x.mu_claim;
		r.results["mu_claim_applies"] = x.mu_claim_applies;
		r.results["effect_claim"] = x.effect_claim;
		nlohmann::json pairs = nlohmann::json::array();
		r.csv_header({"a", "b", "p_a", "p_b", "p_ab", "std_error"});
		for (const auto& f : x.fkg) {
			pairs.push_back({{"a", f.a}, {"b", f.b}, {"p_ab", f.p_ab}, {"product", f.p_a * f.p_b}});
			r.csv_row({f.a, f.b, num(f.p_a), num(f.p_b), num(f.p_ab), num(f.std_error)});
		}
		r.results["fkg"] = pairs;
		if (x.mu_claim_applies)
			r.gate("mean_claim", x.mu_ok);
		r.gate("effect_claim", x.effect_ok);
		r.gate("fkg", x.fkg_ok);
	});
	s->add_option("--r", te->r, "tree height")->capture_default_str();
	s->add_option("--eps", te->eps, "edge flip probability")->capture_default_str();
	s->add_option("--delta", te->delta, "leaf raise probability")->capture_default_str();
	s->add_option("--samples", te->samples)->capture_default_str();

	auto mn = std::make_shared<MinArgs>();
	s = leaf(*g, ctx, "dictator-min", "minimizers of the biased mean among monotone balanced functions", [mn](Report& r) {
		r.inputs["n"] = mn->n;
		r.inputs["p"] = mn->ps;
		bool all = true;
		nlohmann::json rows = nlohmann::json::array();
		for (double p : mn->ps) {
			const DictatorExtremality d = dictator_minimizers(mn->n, p);
			all = all && d.only_dictators;
			rows.push_back({{"p", p}, {"min_value", d.min_value}, {"minimizers", d.minimizers}});
		}
		r.results["minimizers"] = rows;
		r.gate("only_dictators", all);
	});
	s->add_option("--n", mn->n)->capture_default_str();
	s->add_option("--p", mn->ps)->delimiter(',');

	auto co = std::make_shared<CoalitionArgs>();
	s = leaf(*g, ctx, "coalition", "greedy coalition fixing the most influential voters to +1", [co](Report& r) {
		r.inputs["f"] = co->f;
		const BooleanFunction f = resolve_function(co->f, co->n);
		const int budget = co->budget > 0 ? co->budget : f.n();
		r.inputs["budget"] = budget;
		const CoalitionTrace t = greedy_coalition(f, budget);
		std::vector<int> chosen;
		for (int i : t.chosen)
			chosen.push_back(i + 1);
		r.results["chosen"] = chosen;
		r.results["means"] = t.means;
		r.gate("nondecreasing", t.nondecreasing);
		r.gate("step_bound", t.step_bound_ok);
	});
	s->add_option("--f", co->f)->required();
	s->add_option("--n", co->n);
	s->add_option("--budget", co->budget);
}

} // namespace qsc::cli
