#include <cmath>
#include <memory>

#include "report.hpp"

#include "qsc/aggregation/jury.hpp"
#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/biased.hpp"
#include "qsc/boolean/fourier.hpp"
#include "qsc/boolean/io.hpp"
#include "qsc/boolean/properties.hpp"
#include "qsc/boolean/stability.hpp"
#include "qsc/boolean/structure.hpp"

namespace qsc::cli {

namespace {

struct AnalyzeArgs {
	std::string f;
	int n = 0;
	double rho = 0.5;
	double p = 0.5;
	std::string save;
};

void run_analyze(const AnalyzeArgs& a, Report& r)
{
	const BooleanFunction f = resolve_function(a.f, a.n);
	r.inputs["f"] = a.f;
	r.inputs["rho"] = a.rho;
	r.inputs["p"] = a.p;
	const FourierExpansion c = wht(f);
	const auto inf = influences(f);
	auto& res = r.results;
	res["n"] = f.n();
	res["codomain"] = to_string(f.codomain());
	res["mean"] = f.mean();
	res["variance"] = f.variance();
	res["influences"] = inf;
	res["total_influence"] = total_influence(f);
	res["level_weights"] = c.level_weights();
	res["stability"] = noisy_inner_product(c, c, a.rho);
	res["monotone"] = is_monotone(f);

	r.csv_header({"i", "influence"});
	for (std::size_t i = 0; i < inf.size(); ++i)
		r.csv_row({std::to_string(i + 1), num(inf[i])});

	const bool boolean = f.codomain() == Codomain::PlusMinusOne || f.codomain() == Codomain::ZeroOne;
	if (f.n() >= 1) {
		const auto hc = hypercontractivity_check(f, 1.0 / std::sqrt(3.0), 4.0, 2.0);
		res["hypercontractivity"] = {{"lhs", hc.lhs}, {"rhs", hc.rhs}};
		r.gate("hypercontractivity_4_2", hc.ok);
	}
	if (std::abs(a.rho) < 1.0) {
		const auto nb = noisy_influence_sum_bound(f, a.rho);
		res["noisy_influence_sum"] = {{"value", nb.lhs}, {"bound", nb.bound}};
		r.gate("noisy_influence_sum_bound", nb.ok);
	}
	const auto md = martingale_delta(f);
	res["martingale"] = {{"delta", md.delta.empty() ? 0.0 : md.delta.back()}, {"variance", md.variance}};
	r.gate("martingale_orthogonality", md.orthogonality_ok);
	r.gate("martingale_increments", md.increment_bound_ok);

	if (boolean) {
		const BooleanFunction pm = f.codomain() == Codomain::ZeroOne ? f.to_plus_minus() : f;
		if (pm.n() >= 1) {
			const auto fkn = fkn_analysis(pm);
			res["fkn"] = {{"level1_weight", fkn.level1_weight}, {"dictator", fkn.dictator + 1}, {"sign", fkn.sign},
				{"distance", fkn.distance}, {"bound", fkn.bound}};
			r.gate("fkn", fkn.ok);
		}
		if (pm.n() >= 2 && !pm.is_constant()) {
			const auto k = kkl_diagnostic(pm);
			res["kkl"] = {{"min_influence", k.min_influence}, {"variance", k.variance}, {"ratio", k.ratio}};
		}
		if (a.p > 0.0 && a.p < 1.0) {
			const BiasedMeasure mu(pm.n(), a.p);
			double sum = 0.0;
			for (int i = 0; i < pm.n(); ++i)
				sum += biased_influence(pm, mu, i);
			const double var = biased_variance(pm, mu);
			res["biased"] = {{"expectation", biased_expectation(pm, mu)}, {"variance", var}, {"influence_sum", sum}};
			r.gate("poincare", sum >= var - 1e-12);
		}
		if (is_monotone(pm)) {
			const auto russo = russo_derivative_check(pm);
			res["russo"] = {{"derivative", russo.derivative}, {"influence_sum", russo.influence_sum}};
			r.gate("russo", russo.ok);
		}
	}
	if (!a.save.empty()) {
		save_function(a.save, f);
		res["saved"] = a.save;
	}
}

struct CurveArgs {
	std::string family = "majority";
	double rho = 0.5;
	std::vector<int> params{1, 3, 5, 7, 9, 11, 13, 15};
};

struct MajorityArgs {
	int n = 1001;
	double rho = 0.5;
	std::uint64_t samples = 100000;
};

struct FunctionArgs {
	std::string f;
	int n = 0;
	double rho = 0.5;
	std::uint64_t samples = 0;
};

} // namespace

void add_analyze(CLI::App& app, Context& ctx)
{
	auto a = std::make_shared<AnalyzeArgs>();
	CLI::App* s = leaf(app, ctx, "analyze", "Fourier, influence and inequality report for one Boolean function",
		[a](Report& r) { run_analyze(*a, r); });
	s->add_option("--f", a->f, "zoo spec (tribes:r=2,m=4) or a .json/.bfn file")->required();
	s->add_option("--n", a->n, "arity, appended to specs that omit it");
	s->add_option("--rho", a->rho, "correlation for stability and the noisy influence bound")->capture_default_str();
	s->add_option("--p", a->p, "bias for the Poincare check")->capture_default_str();
	s->add_option("--save", a->save, "write the function (.json or .bfn)");
}

void add_stability(CLI::App& app, Context& ctx)
{
	CLI::App* g = group(app, "stability", "Noise stability of families and single functions");

	auto c = std::make_shared<CurveArgs>();
	CLI::App* s = leaf(*g, ctx, "curve", "exact stability along a family", [c](Report& r) {
		r.inputs["family"] = c->family;
		r.inputs["rho"] = c->rho;
		r.inputs["params"] = c->params;
		const StabilityCurve sc = stability_curve(c->family, c->rho, c->params);
		r.results["sizes"] = sc.sizes;
		r.results["values"] = sc.values;
		if (sc.has_limit) {
			r.results["limit"] = sc.limit;
			r.results["monotone_toward_limit"] = sc.monotone_toward_limit;
		}
		r.csv_header({"param", "n", "stability"});
		for (std::size_t i = 0; i < sc.values.size(); ++i)
			r.csv_row({std::to_string(c->params[i]), std::to_string(sc.sizes[i]), num(sc.values[i])});
	});
	s->add_option("--family", c->family, "majority|electoral_college|recursive_majority|tribes|parity|dictator")
		->capture_default_str();
	s->add_option("--rho", c->rho)->capture_default_str();
	s->add_option("--params", c->params, "size parameter of each member")->delimiter(',');

	auto m = std::make_shared<MajorityArgs>();
	s = leaf(*g, ctx, "majority", "exact and simulated stability of majority against the arcsine limit",
		[m, &ctx](Report& r) {
			r.inputs["n"] = m->n;
			r.inputs["rho"] = m->rho;
			r.inputs["samples"] = m->samples;
			const double exact = majority_stability_exact(m->n, m->rho);
			const Estimate est = majority_stability_mc(m->n, m->rho, m->samples, ctx.options.seed);
			r.results["exact"] = exact;
			r.results["estimate"] = est.value;
			r.results["std_error"] = est.std_error;
			r.results["limit"] = sheppard_limit(m->rho);
			r.gate("estimate_within_4se", std::abs(est.value - exact) <= 4.0 * est.std_error + 1e-12);
		});
	s->add_option("--n", m->n)->capture_default_str();
	s->add_option("--rho", m->rho)->capture_default_str();
	s->add_option("--samples", m->samples)->capture_default_str();

	auto f = std::make_shared<FunctionArgs>();
	s = leaf(*g, ctx, "function", "stability of one function, optionally simulated too", [f, &ctx](Report& r) {
		const BooleanFunction fn = resolve_function(f->f, f->n);
		r.inputs["f"] = f->f;
		r.inputs["rho"] = f->rho;
		r.inputs["samples"] = f->samples;
		const double exact = stability(fn, f->rho);
		r.results["exact"] = exact;
		if (f->samples > 0) {
			const Estimate e = noisy_inner_product_mc(fn, fn, f->rho, f->samples, ctx.options.seed);
			r.results["estimate"] = e.value;
			r.results["std_error"] = e.std_error;
			r.gate("estimate_within_4se", std::abs(e.value - exact) <= 4.0 * e.std_error + 1e-12);
		}
	});
	s->add_option("--f", f->f)->required();
	s->add_option("--n", f->n);
	s->add_option("--rho", f->rho)->capture_default_str();
	s->add_option("--samples", f->samples)->capture_default_str();
}

} // namespace qsc::cli
