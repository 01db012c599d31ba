#include <cmath>
#include <memory>
#include <numeric>

#include "report.hpp"

#include "qsc/boolean/generators.hpp"
#include "qsc/condorcet/arrow.hpp"
#include "qsc/condorcet/constitution.hpp"
#include "qsc/condorcet/source.hpp"
#include "qsc/spec_string.hpp"

namespace qsc::cli {

namespace {

struct TripleArgs {
	std::string f = "maj";
	std::string g;
	std::string h;
	int n = 0;
};

struct ParadoxArgs : TripleArgs {
	std::string mode = "fourier";
	std::uint64_t samples = 1000000;
};

struct TwoArgs : TripleArgs {
	int i = 1;
	int j = 2;
	double eps = 0.1;
};

struct ConstitutionArgs {
	std::string f = "maj";
	int n = 3;
	int k = 4;
	std::uint64_t samples = 200000;
};

struct CensusArgs {
	int n = 3;
};

std::array<BooleanFunction, 3> triple(const TripleArgs& a, Report& r)
{
	r.inputs["f"] = a.f;
	r.inputs["g"] = a.g.empty() ? a.f : a.g;
	r.inputs["h"] = a.h.empty() ? a.f : a.h;
	if (a.n > 0)
		r.inputs["n"] = a.n;
	BooleanFunction f = resolve_function(a.f, a.n);
	BooleanFunction g = a.g.empty() ? f : resolve_function(a.g, a.n);
	BooleanFunction h = a.h.empty() ? f : resolve_function(a.h, a.n);
	if (g.n() != f.n() || h.n() != f.n())
		throw std::invalid_argument("the three functions need equal arity");
	return {std::move(f), std::move(g), std::move(h)};
}

void triple_options(CLI::App* s, TripleArgs& a)
{
	s->add_option("--f", a.f, "rule for the a-vs-b comparison")->capture_default_str();
	s->add_option("--g", a.g, "rule for b-vs-c (default: f)");
	s->add_option("--h", a.h, "rule for c-vs-a (default: f)");
	s->add_option("--n", a.n, "voters, appended to specs that omit it");
}

bool is_majority_spec(const std::string& spec)
{
	const std::string name = SpecString::parse(spec).name;
	return name == "maj" || name == "majority";
}

// count / 6^n reduced, exact while 6^n fits a double mantissa
std::string six_power_fraction(double p, int n)
{
	long long den = 1;
	for (int i = 0; i < n; ++i)
		den *= 6;
	const long long num = std::llround(p * static_cast<double>(den));
	const long long g = std::gcd(num, den);
	return std::to_string(num / g) + "/" + std::to_string(den / g);
}

void run_paradox(const ParadoxArgs& a, const Context& ctx, Report& r)
{
	const ParadoxMode mode = paradox_mode_from_string(a.mode);
	r.inputs["mode"] = a.mode;
	if (mode == ParadoxMode::MonteCarlo && a.g.empty() && a.h.empty() && a.n > kMaxDenseArity && is_majority_spec(a.f)) {
		// untabulated majority for large electorates
		r.inputs["f"] = a.f;
		r.inputs["n"] = a.n;
		r.inputs["samples"] = a.samples;
		if (a.n % 2 == 0)
			throw std::invalid_argument("majority needs odd n");
		const Estimate e = paradox_probability_mc(a.n, majority_vote, majority_vote, majority_vote, a.samples, ctx.options.seed);
		r.results["p_paradox"] = e.value;
		r.results["std_error"] = e.std_error;
		return;
	}
	const auto [f, g, h] = triple(a, r);
	if (mode == ParadoxMode::MonteCarlo) {
		r.inputs["samples"] = a.samples;
		const Estimate e = paradox_probability_mc(f, g, h, a.samples, ctx.options.seed);
		r.results["p_paradox"] = e.value;
		r.results["std_error"] = e.std_error;
		return;
	}
	const double p = paradox_probability(f, g, h, mode);
	r.results["p_paradox"] = p;
	if (mode == ParadoxMode::Exhaustive)
		r.results["fraction"] = six_power_fraction(p, f.n());
}

} // namespace

void add_condorcet(CLI::App& app, Context& ctx)
{
	CLI::App* grp = group(app, "condorcet", "Paradox probabilities and Arrow-type classification");

	auto pa = std::make_shared<ParadoxArgs>();
	CLI::App* s = leaf(*grp, ctx, "paradox", "probability of a non-transitive outcome",
		[pa, &ctx](Report& r) { run_paradox(*pa, ctx, r); });
	triple_options(s, *pa);
	s->add_option("--mode", pa->mode, "fourier|exhaustive|mc")->capture_default_str();
	s->add_option("--samples", pa->samples)->capture_default_str();

	auto cl = std::make_shared<TripleArgs>();
	s = leaf(*grp, ctx, "classify", "Arrow classification with distances and the balanced FKN route", [cl](Report& r) {
		const auto [f, g, h] = triple(*cl, r);
		const ArrowClassification c = classify_arrow(f, g, h);
		r.results["p_paradox"] = c.paradox_probability;
		r.results["verdict"] = to_string(c.verdict);
		r.results["dictator_distances"] = c.dictator_distances;
		if (c.verdict == ArrowVerdict::DictatorTriple)
			r.results["certificate"] = {{"dictator", c.dictator + 1}, {"sign", c.sign}};
		if (c.verdict == ArrowVerdict::OppositeConstantsPair)
			r.results["certificate"] = {{"pair", c.pair + 1}, {"values", c.pair_values}};
		r.results["pair_distances"] = c.pair_distances;
		r.gate("paradox_free_iff_classified",
			(c.paradox_probability <= 1e-12) == (c.verdict != ArrowVerdict::Paradoxical));
		const BalancedArrowReport k = balanced_arrow_check(f, g, h);
		r.results["balanced_arrow"] = {{"epsilon", k.epsilon}, {"applicable", k.applicable}, {"common_dictator", k.common_dictator},
			{"distances", k.distances}};
		r.gate("balanced_arrow", k.ok);
	});
	triple_options(s, *cl);

	auto two = std::make_shared<TwoArgs>();
	s = leaf(*grp, ctx, "two-influential", "paradox lower bound from two voters with large influence", [two](Report& r) {
		const auto [f, g, h] = triple(*two, r);
		r.inputs["i"] = two->i;
		r.inputs["j"] = two->j;
		r.inputs["eps"] = two->eps;
		const TwoInfluentialBound b = two_influential_paradox_bound(f, g, h, two->i - 1, two->j - 1, two->eps);
		r.results["influence_f"] = b.influence_f;
		r.results["influence_g"] = b.influence_g;
		r.results["p_paradox"] = b.paradox_probability;
		r.results["bound"] = b.bound;
		r.gate("two_influential", b.ok);
	});
	triple_options(s, *two);
	s->add_option("--i", two->i, "voter influential for f (1-based)")->capture_default_str();
	s->add_option("--j", two->j, "voter influential for g (1-based)")->capture_default_str();
	s->add_option("--eps", two->eps)->capture_default_str();

	auto co = std::make_shared<ConstitutionArgs>();
	s = leaf(*grp, ctx, "constitution", "transitivity of one rule applied to every pair of k alternatives",
		[co, &ctx](Report& r) {
			r.inputs["f"] = co->f;
			r.inputs["n"] = co->n;
			r.inputs["k"] = co->k;
			r.inputs["samples"] = co->samples;
			const BooleanFunction f = resolve_function(co->f, co->n);
			const ConstitutionReport c = constitution_check(Constitution::uniform(co->k, f.n(), f), co->samples, ctx.options.seed);
			r.results["p_nontransitive"] = c.p_nontransitive;
			r.results["std_error"] = c.std_error;
			r.results["exhaustive"] = c.exhaustive;
			r.results["member"] = c.member;
			nlohmann::json blocks = nlohmann::json::array();
			for (const auto& b : c.partition) {
				std::vector<int> alts;
				for (int x : b.alternatives)
					alts.push_back(x + 1);
				blocks.push_back({{"alternatives", alts}, {"dictator", b.dictator + 1}, {"sign", b.sign}});
			}
			r.results["partition"] = blocks;
			if (c.exhaustive)
				r.gate("transitive_iff_member", (c.p_nontransitive <= 1e-12) == c.member);
		});
	s->add_option("--f", co->f)->capture_default_str();
	s->add_option("--n", co->n)->capture_default_str();
	s->add_option("--k", co->k)->capture_default_str();
	s->add_option("--samples", co->samples)->capture_default_str();

	auto ce = std::make_shared<CensusArgs>();
	s = leaf(*grp, ctx, "arrow-census", "every f on n voters used for all three pairs", [ce](Report& r) {
		const int n = ce->n;
		if (n < 1 || n > 3)
			throw std::invalid_argument("arrow census enumerates 2^(2^n) functions; n <= 3");
		r.inputs["n"] = n;
		const std::size_t size = std::size_t{1} << n;
		std::uint64_t zero = 0;
		bool iff = true;
		nlohmann::json free = nlohmann::json::array();
		r.csv_header({"table", "p_paradox", "signed_dictator"});
		for (std::uint64_t t = 0; t < (std::uint64_t{1} << size); ++t) {
			const BooleanFunction f = BooleanFunction::tabulate(
				n, [&](std::uint64_t x) { return ((t >> x) & 1u) ? 1 : -1; }, Codomain::PlusMinusOne);
			const double p = paradox_probability_exhaustive(f, f, f, 1);
			bool dict = false;
			for (int i = 0; i < n && !dict; ++i)
				dict = f == dictator(n, i, 1) || f == dictator(n, i, -1);
			const bool paradox_free = p <= 1e-12;
			zero += paradox_free;
			if (paradox_free)
				free.push_back(t);
			iff = iff && paradox_free == dict;
			r.csv_row({std::to_string(t), num(p), dict ? "1" : "0"});
		}
		r.results["functions"] = std::uint64_t{1} << size;
		r.results["paradox_free"] = zero;
		r.results["paradox_free_tables"] = free;
		r.gate("paradox_free_iff_dictator", iff);
	});
	s->add_option("--n", ce->n)->capture_default_str();
}

} // namespace qsc::cli
