#include <bit>
#include <cmath>
#include <filesystem>
#include <memory>

#include "report.hpp"

#include "qsc/manip/census.hpp"
#include "qsc/manip/influence.hpp"
#include "qsc/manip/io.hpp"
#include "qsc/manip/nonmanip.hpp"
#include "qsc/manip/paths.hpp"
#include "qsc/manip/ranking.hpp"
#include "qsc/manip/scf.hpp"
#include "qsc/rng.hpp"

namespace qsc::cli {

namespace {

struct RuleArgs {
	std::string rule = "borda";
	int k = 3;
	int n = 2;
};

struct CensusArgs : RuleArgs {
	int rmax = 0;
	std::string mode = "auto";
	std::uint64_t samples = 200000;
	std::string save;
};

struct CheckArgs : RuleArgs {
	std::string profile;
	int rmax = 0;
};

struct FiberArgs : RuleArgs {
	double gamma = 0.0;
};

struct VoterArgs : RuleArgs {
	int voter = 1;
};

struct CongestionArgs {
	int k = 3;
	int variant = 1;
};

struct IsoArgs {
	int ell = 6;
	int n = 3;
	int sets = 100;
};

void rule_options(CLI::App* s, RuleArgs& a)
{
	s->add_option("--rule", a.rule, "plurality|borda|veto|copeland|dictator:i=|top_h:i=,h=|two_valued:a=,b=,g=|constant:c= or an SCF1 file")
		->capture_default_str();
	s->add_option("--k", a.k, "alternatives")->capture_default_str();
	s->add_option("--n", a.n, "voters")->capture_default_str();
}

SocialChoiceFunction resolve_rule(const RuleArgs& a, Report& r)
{
	r.inputs["rule"] = a.rule;
	if (std::filesystem::is_regular_file(a.rule)) {
		SocialChoiceFunction f = load_scf(a.rule);
		r.inputs["k"] = f.k();
		r.inputs["n"] = f.n();
		return f;
	}
	r.inputs["k"] = a.k;
	r.inputs["n"] = a.n;
	SocialChoiceFunction f = make_scf(a.rule, a.k, a.n);
	r.results["tie_break"] = f.tie_break();
	return f;
}

nlohmann::json record_json(const ManipulationRecord& m, int k)
{
	return {{"profile", profile_to_string(m.profile, k)}, {"voter", m.voter + 1},
		{"misreport", ranking_tables(k).to_string(m.misreport)}, {"r", m.r},
		{"outcome", std::string(1, alternative_letter(m.outcome))},
		{"manipulated_outcome", std::string(1, alternative_letter(m.manipulated_outcome))},
		{"description", describe(m, k)}};
}

void run_census(const CensusArgs& a, const Context& ctx, Report& r)
{
	SocialChoiceFunction f = resolve_rule(a, r);
	const int rmax = a.rmax > 0 ? a.rmax : f.k();
	r.inputs["rmax"] = rmax;
	r.inputs["mode"] = a.mode;
	r.inputs["samples"] = a.samples;
	const CensusReport c = manipulation_census(f, rmax, census_mode_from_string(a.mode), a.samples, ctx.options.seed);
	r.results["exhaustive"] = c.exhaustive;
	r.results["profiles"] = c.profiles;
	r.results["p_manip"] = c.p_manip;
	if (!c.exhaustive)
		r.results["p_manip_se"] = c.p_manip_se;
	nlohmann::json table = nlohmann::json::object();
	r.csv_header({"r", "fraction", "std_error"});
	for (int w = 2; w <= rmax; ++w) {
		const auto i = static_cast<std::size_t>(w);
		table[std::to_string(w)] = c.p_r[i];
		r.csv_row({std::to_string(w), num(c.p_r[i]), num(c.p_r_se[i])});
	}
	r.results["p_r"] = table;
	if (!a.save.empty()) {
		save_scf(a.save, f);
		r.results["saved"] = a.save;
	}
}

void run_check(const CheckArgs& a, Report& r)
{
	const SocialChoiceFunction f = resolve_rule(a, r);
	r.inputs["profile"] = a.profile;
	r.inputs["rmax"] = a.rmax;
	const Profile p = parse_profile(a.profile, f.k());
	if (static_cast<int>(p.size()) != f.n())
		throw std::invalid_argument("profile lists a different number of voters");
	r.results["winner"] = std::string(1, alternative_letter(f(p)));
	const auto m = is_manipulable_at(f, p, a.rmax);
	r.results["manipulable"] = m.has_value();
	if (m) {
		r.results["manipulation"] = record_json(*m, f.k());
		r.gate("record_valid", is_valid_manipulation(f, *m));
	}
}

void run_witness(const RuleArgs& a, Report& r)
{
	SocialChoiceFunction f = resolve_rule(a, r);
	const std::uint32_t range = scf_range(f);
	const int dict = dictator_on_range(f);
	std::string letters;
	for (int x = 0; x < f.k(); ++x)
		if ((range >> x) & 1u)
			letters += alternative_letter(x);
	r.results["range"] = letters;
	r.results["dictator_on_range"] = dict >= 0 ? nlohmann::json(dict + 1) : nlohmann::json(nullptr);
	const bool applies = std::popcount(range) >= 3 && dict < 0;
	r.results["precondition"] = applies;
	if (!applies)
		return;
	const ManipulationRecord m = gs_witness(f);
	r.results["witness"] = record_json(m, f.k());
	r.gate("witness_valid", is_valid_manipulation(f, m));
}

} // namespace

void add_manip(CLI::App& app, Context& ctx)
{
	CLI::App* g = group(app, "manip", "Manipulation of social choice functions on rankings");

	auto ce = std::make_shared<CensusArgs>();
	CLI::App* s = leaf(*g, ctx, "census", "fraction of profiles with a manipulation, by window width",
		[ce, &ctx](Report& r) { run_census(*ce, ctx, r); });
	rule_options(s, *ce);
	s->add_option("--rmax", ce->rmax, "largest window width (default k)");
	s->add_option("--mode", ce->mode, "auto|exhaustive|mc")->capture_default_str();
	s->add_option("--samples", ce->samples)->capture_default_str();
	s->add_option("--save", ce->save, "write the rule table as SCF1");

	auto ch = std::make_shared<CheckArgs>();
	s = leaf(*g, ctx, "check", "manipulation at one profile", [ch](Report& r) { run_check(*ch, r); });
	rule_options(s, *ch);
	s->add_option("--profile", ch->profile, "rankings per voter, e.g. abcd,cadb")->required();
	s->add_option("--rmax", ch->rmax, "largest window width (0: any)");

	auto wi = std::make_shared<RuleArgs>();
	s = leaf(*g, ctx, "witness", "first manipulation point in profile order", [wi](Report& r) { run_witness(*wi, r); });
	rule_options(s, *wi);

	auto in = std::make_shared<RuleArgs>();
	s = leaf(*g, ctx, "influences", "boundary sizes and influences on the rankings graph", [in, &ctx](Report& r) {
		SocialChoiceFunction f = resolve_rule(*in, r);
		const RankingInfluences inf = ranking_influences(f, ctx.options.threads);
		std::vector<double> per_voter;
		r.csv_header({"voter", "influence"});
		for (int i = 0; i < f.n(); ++i) {
			per_voter.push_back(inf.inf(i));
			r.csv_row({std::to_string(i + 1), num(per_voter.back())});
		}
		r.results["influence"] = per_voter;
		r.results["mass"] = inf.mass;
		r.gate("boundary_identities", inf.consistent());
		const InfluenceBounds b = influence_bounds(inf);
		r.results["dist_to_constant"] = b.dist_to_constant;
		r.results["const_dist_bound"] = b.const_dist_bound;
		r.results["sum_inf_var_margin"] = b.sum_inf_var_margin;
		r.results["refined_sum_margin"] = b.refined_sum_margin;
		r.gate("sum_influence_variance", b.sum_inf_var);
		r.gate("distance_to_constant", b.const_dist);
		r.gate("refined_sum", b.refined_sum);
	});
	rule_options(s, *in);

	auto di = std::make_shared<RuleArgs>();
	s = leaf(*g, ctx, "distance", "distance to the nonmanipulable family and the quantitative gate", [di, &ctx](Report& r) {
		SocialChoiceFunction f = resolve_rule(*di, r);
		const NonmanipDistance d = dist_to_nonmanip(f, ctx.options.threads);
		r.results["top_h"] = d.top_h;
		r.results["top_h_voter"] = d.top_h_voter + 1;
		std::string h;
		for (int x = 0; x < f.k(); ++x)
			if ((d.top_h_mask >> x) & 1u)
				h += alternative_letter(x);
		r.results["top_h_set"] = h;
		r.results["two_valued"] = {{"a", std::string(1, alternative_letter(d.two_valued.a))},
			{"b", std::string(1, alternative_letter(d.two_valued.b))}, {"exact", d.two_valued.dist_exact},
			{"fiber_majority", d.two_valued.dist_fiber_majority}, {"monotonized", d.two_valued.dist_monotonized}};
		r.results["combined"] = d.combined;
		r.gate("monotone_fit_violation_bound", d.two_valued.violation_bound_ok);
		const GsGate gate = quantitative_gs_gate(f, ctx.options.threads);
		r.results["gate"] = {{"epsilon", gate.epsilon}, {"m4_fraction", gate.m4_fraction}, {"bound", gate.bound},
			{"vacuous", gate.vacuous}};
		r.gate("quantitative_gs", gate.ok);
	});
	rule_options(s, *di);

	auto au = std::make_shared<RuleArgs>();
	s = leaf(*g, ctx, "audit", "anonymity, neutrality and the nonmanipulable boundary property", [au, &ctx](Report& r) {
		SocialChoiceFunction f = resolve_rule(*au, r);
		f.tabulate(ctx.options.threads);
		const SymmetryAudit an = anonymity_audit(f, ctx.options.threads);
		const SymmetryAudit ne = neutrality_audit(f, true, ctx.options.threads);
		r.results["anonymity"] = {{"checked", an.checked}, {"violations", an.violations}, {"holds", an.ok()}};
		r.results["neutrality"] = {{"checked", ne.checked}, {"violations", ne.violations}, {"skipped_ties", ne.skipped_ties},
			{"holds", ne.ok()}};
		const CensusReport c = manipulation_census(f, f.k(), CensusMode::Exhaustive, 0, ctx.options.seed, ctx.options.threads);
		r.results["p_manip"] = c.p_manip;
		if (c.p_manip == 0.0) {
			const BoundaryAudit b = non_manip_boundary_audit(f, ctx.options.threads);
			r.results["boundary"] = {{"pairs", b.pairs}, {"violations", b.violations}, {"first_violation", b.first_violation}};
			r.gate("nonmanipulable_boundary", b.ok());
		}
	});
	rule_options(s, *au);

	auto fi = std::make_shared<FiberArgs>();
	s = leaf(*g, ctx, "fibers", "fibers of pairwise preferences and their boundary fractions", [fi, &ctx](Report& r) {
		SocialChoiceFunction f = resolve_rule(*fi, r);
		const double gamma = fi->gamma > 0.0 ? fi->gamma : default_fiber_gamma(0.1, f.n(), f.k());
		r.inputs["gamma"] = gamma;
		const auto cs = fiber_census(f, gamma, ctx.options.threads);
		nlohmann::json rows = nlohmann::json::array();
		r.csv_header({"voter", "a", "b", "large", "large_mass", "boundary_mass"});
		for (const auto& c : cs) {
			rows.push_back({{"voter", c.voter + 1}, {"a", std::string(1, alternative_letter(c.a))},
				{"b", std::string(1, alternative_letter(c.b))}, {"large", c.large}, {"large_mass", c.large_mass},
				{"boundary_mass", c.boundary_mass}});
			r.csv_row({std::to_string(c.voter + 1), std::string(1, alternative_letter(c.a)),
				std::string(1, alternative_letter(c.b)), std::to_string(c.large), num(c.large_mass), num(c.boundary_mass)});
		}
		r.results["fibers"] = rows;
	});
	rule_options(s, *fi);
	s->add_option("--gamma", fi->gamma, "large-fiber threshold (default from eps = 0.1)");

	auto ld = std::make_shared<VoterArgs>();
	s = leaf(*g, ctx, "local-dictators", "fraction of profiles where a voter locally dictates a triple",
		[ld, &ctx](Report& r) {
			SocialChoiceFunction f = resolve_rule(*ld, r);
			r.inputs["voter"] = ld->voter;
			const LocalDictatorCensus c = local_dictator_census(f, ld->voter - 1, ctx.options.threads);
			nlohmann::json rows = nlohmann::json::array();
			for (std::size_t t = 0; t < c.triples.size(); ++t) {
				std::string h;
				for (int x = 0; x < f.k(); ++x)
					if ((c.triples[t] >> x) & 1u)
						h += alternative_letter(x);
				rows.push_back({{"triple", h}, {"fraction", c.ld_h[t]}});
			}
			r.results["triples"] = rows;
		});
	rule_options(s, *ld);
	s->add_option("--voter", ld->voter, "1-based")->capture_default_str();

	auto co = std::make_shared<CongestionArgs>();
	s = leaf(*g, ctx, "congestion", "canonical path congestion on the permutation graph", [co](Report& r) {
		r.inputs["k"] = co->k;
		r.inputs["variant"] = co->variant;
		const CongestionReport c = congestion_census(co->k, co->variant);
		r.results["pairs"] = c.pairs;
		r.results["max_vertex"] = c.max_vertex;
		r.results["max_edge"] = c.max_edge;
		r.results["vertex_bound"] = c.vertex_bound;
		r.results["max_length"] = c.max_length;
		r.results["length_bound"] = c.length_bound;
		r.results["order_kept"] = c.order_kept;
		r.gate("congestion", c.ok);
	});
	s->add_option("--k", co->k)->capture_default_str();
	s->add_option("--variant", co->variant, "1: all pairs, 2: paths keeping the a,b order")->capture_default_str();

	auto is = std::make_shared<IsoArgs>();
	s = leaf(*g, ctx, "isoperimetry", "edge boundary of random sets in a power of the complete graph",
		[is, &ctx](Report& r) {
			r.inputs["ell"] = is->ell;
			r.inputs["n"] = is->n;
			r.inputs["sets"] = is->sets;
			std::uint64_t vertices = 1;
			for (int i = 0; i < is->n; ++i)
				vertices *= static_cast<std::uint64_t>(is->ell);
			const auto cap = vertices - vertices / static_cast<std::uint64_t>(is->ell);
			SplitMix64 rng = stream(ctx.options.seed, 0);
			std::uint64_t applicable = 0;
			std::uint64_t failures = 0;
			double worst = INFINITY;
			r.csv_header({"set", "size", "boundary"});
			for (int t = 0; t < is->sets; ++t) {
				const std::uint64_t size = 1 + rng.below(cap);
				const auto a = random_vertex_subset(is->ell, is->n, size, ctx.options.seed + 1 + static_cast<std::uint64_t>(t));
				const IsoperimetryResult res = product_complete_graph_isoperimetry(is->ell, is->n, a);
				applicable += res.applicable;
				failures += res.applicable && !res.ok;
				worst = std::min(worst, static_cast<double>(res.boundary) / static_cast<double>(res.size));
				r.csv_row({std::to_string(t), std::to_string(res.size), std::to_string(res.boundary)});
			}
			r.results["applicable"] = applicable;
			r.results["failures"] = failures;
			r.results["min_boundary_ratio"] = worst;
			r.gate("isoperimetry", failures == 0);
		});
	s->add_option("--ell", is->ell)->capture_default_str();
	s->add_option("--n", is->n)->capture_default_str();
	s->add_option("--sets", is->sets)->capture_default_str();
}

} // namespace qsc::cli
