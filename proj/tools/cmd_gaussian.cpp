#include <cmath>
#include <memory>
#include <numbers>

#include "report.hpp"

#include "qsc/condorcet/gaussian_arrow.hpp"
#include "qsc/condorcet/source.hpp"
#include "qsc/gaussian/montecarlo.hpp"
#include "qsc/gaussian/normal.hpp"
#include "qsc/gaussian/quadrant.hpp"

namespace qsc::cli {

namespace {

struct GuilbaudArgs {
	int n = 0;
	std::uint64_t samples = 1000000;
	double tolerance = 0.005;
};

struct QuadrantArgs {
	double x = 0.5;
	double y = 0.5;
	double rho = 0.5;
};

struct GridArgs {
	std::vector<double> rhos{0.2, 0.5, 0.8};
	int points = 19;
};

struct BorellArgs {
	std::string f = "halfspace:t=0";
	std::string g = "halfspace:t=0";
	double rho = 0.5;
	int dim = 2;
	std::uint64_t samples = 200000;
};

struct ReverseArgs {
	std::string b1 = "halfspace:t=1";
	std::string b2 = "halfspace:t=1";
	double rho = -1.0 / 3.0;
	int dim = 1;
	std::uint64_t samples = 200000;
};

struct TournamentArgs {
	int k = 3;
	std::uint64_t samples = 200000;
};

struct ArrowArgs {
	std::vector<double> thresholds{0.0, 0.0, 0.0};
	double eps = 0.1;
	std::uint64_t samples = 200000;
};

} // namespace

void add_gaussian(CLI::App& app, Context& ctx)
{
	CLI::App* g = group(app, "gaussian", "Gaussian limits, quadrant probabilities and simulations");

	auto gu = std::make_shared<GuilbaudArgs>();
	CLI::App* s = leaf(*g, ctx, "guilbaud", "limit of the majority paradox probability", [gu, &ctx](Report& r) {
		const double c = guilbaud_constant();
		r.results["constant"] = c;
		r.results["closed_form"] = 1.0 - 3.0 * std::acos(-1.0 / 3.0) / (2.0 * std::numbers::pi);
		r.results["sheppard_minus_third"] = sheppard(kCondorcetRho);
		if (gu->n > 0) {
			r.inputs["n"] = gu->n;
			r.inputs["samples"] = gu->samples;
			r.inputs["tolerance"] = gu->tolerance;
			const Estimate e = paradox_probability_mc(
				gu->n, majority_vote, majority_vote, majority_vote, gu->samples, ctx.options.seed);
			r.results["estimate"] = e.value;
			r.results["std_error"] = e.std_error;
			r.gate("estimate_near_constant", std::abs(e.value - c) <= gu->tolerance);
		}
	});
	s->add_option("--n", gu->n, "odd voter count for a simulated majority paradox (0: skip)");
	s->add_option("--samples", gu->samples)->capture_default_str();
	s->add_option("--tolerance", gu->tolerance)->capture_default_str();

	auto q = std::make_shared<QuadrantArgs>();
	s = leaf(*g, ctx, "quadrant", "J_rho(x, y) and its first derivatives", [q](Report& r) {
		const QuadrantParams p{q->x, q->y, q->rho};
		r.inputs["x"] = q->x;
		r.inputs["y"] = q->y;
		r.inputs["rho"] = q->rho;
		r.results["value"] = j_rho(p);
		r.results["dx"] = j_rho_dx(q->x, q->y, q->rho);
		r.results["dy"] = j_rho_dy(q->x, q->y, q->rho);
		r.results["drho"] = j_rho_drho(q->x, q->y, q->rho);
		const JHessian h = j_rho_hessian(q->x, q->y, q->rho);
		r.results["hessian"] = {h.xx, h.xy, h.yy};
		r.results["max_eigenvalue"] = max_eigenvalue(h, q->rho);
	});
	s->add_option("--x", q->x)->capture_default_str();
	s->add_option("--y", q->y)->capture_default_str();
	s->add_option("--rho", q->rho)->capture_default_str();

	auto gr = std::make_shared<GridArgs>();
	s = leaf(*g, ctx, "jgrid", "semidefiniteness and rho-derivative checks of J on an interior grid", [gr](Report& r) {
		r.inputs["rhos"] = gr->rhos;
		r.inputs["points"] = gr->points;
		const auto grid = interior_grid(gr->points);
		r.csv_header({"x", "y", "rho", "sigma", "value", "max_eigenvalue", "drho"});
		double worst_eig = -INFINITY;
		double worst_drho = -INFINITY;
		double worst_third = 0.0;
		bool nsd = true;
		bool drho = true;
		for (double rho : gr->rhos) {
			const JDerivativeReport rep = j_rho_derivative_checks(grid, rho, {0.0, rho / 2.0, rho});
			worst_eig = std::max(worst_eig, rep.max_eigenvalue);
			worst_drho = std::max(worst_drho, rep.max_drho_excess);
			worst_third = std::max(worst_third, rep.max_third_difference);
			nsd = nsd && rep.negative_semidefinite;
			drho = drho && rep.drho_bounded;
			for (const auto& row : rep.rows)
				r.csv_row({num(row.x), num(row.y), num(row.rho), num(row.sigma), num(row.value), num(row.max_eigenvalue),
					num(row.drho)});
		}
		r.results["max_eigenvalue"] = worst_eig;
		r.results["max_drho_excess"] = worst_drho;
		r.results["max_third_difference"] = worst_third;
		r.gate("negative_semidefinite", nsd);
		r.gate("drho_bounded", drho);
	});
	s->add_option("--rho", gr->rhos)->delimiter(',');
	s->add_option("--points", gr->points)->capture_default_str();

	auto b = std::make_shared<BorellArgs>();
	s = leaf(*g, ctx, "borell", "simulated check of the Gaussian functional inequality", [b, &ctx](Report& r) {
		r.inputs["f"] = b->f;
		r.inputs["g"] = b->g;
		r.inputs["rho"] = b->rho;
		r.inputs["dim"] = b->dim;
		r.inputs["samples"] = b->samples;
		const BorellCheck c = borell_mc_check(b->f, b->g, b->rho, b->dim, b->samples, ctx.options.seed);
		r.results["functional"] = c.functional;
		r.results["functional_se"] = c.functional_se;
		r.results["inner"] = c.inner;
		r.results["inner_se"] = c.inner_se;
		r.results["bound"] = c.rhs;
		r.results["tight"] = c.tight;
		r.gate("borell", c.ok);
	});
	s->add_option("--f", b->f, "halfspace:t=|slab:a=,b=|ball:r=|sigmoid:t=,s=|constant:c=; mass= sets the measure")->capture_default_str();
	s->add_option("--g", b->g)->capture_default_str();
	s->add_option("--rho", b->rho)->capture_default_str();
	s->add_option("--dim", b->dim)->capture_default_str();
	s->add_option("--samples", b->samples)->capture_default_str();

	auto rv = std::make_shared<ReverseArgs>();
	s = leaf(*g, ctx, "reverse-hyp", "simulated joint probability against the reverse bound", [rv, &ctx](Report& r) {
		r.inputs["b1"] = rv->b1;
		r.inputs["b2"] = rv->b2;
		r.inputs["rho"] = rv->rho;
		r.inputs["dim"] = rv->dim;
		r.inputs["samples"] = rv->samples;
		const ReverseHypCheck c = gaussian_reverse_hyp_check(rv->b1, rv->b2, rv->rho, rv->dim, rv->samples, ctx.options.seed);
		r.results["p_joint"] = c.p_joint;
		r.results["p_joint_se"] = c.p_joint_se;
		r.results["p1"] = c.p1;
		r.results["p2"] = c.p2;
		r.results["bound"] = c.bound;
		r.results["eps_bound"] = c.eps_bound;
		r.gate("reverse_hypercontractivity", c.ok);
	});
	s->add_option("--b1", rv->b1)->capture_default_str();
	s->add_option("--b2", rv->b2)->capture_default_str();
	s->add_option("--rho", rv->rho)->capture_default_str();
	s->add_option("--dim", rv->dim)->capture_default_str();
	s->add_option("--samples", rv->samples)->capture_default_str();

	auto t = std::make_shared<TournamentArgs>();
	s = leaf(*g, ctx, "tournament", "unique maximum and linear order under majority, simulated", [t, &ctx](Report& r) {
		r.inputs["k"] = t->k;
		r.inputs["samples"] = t->samples;
		const TournamentEstimate e = tournament_mc(t->k, t->samples, ctx.options.seed);
		r.results["p_unique_max"] = e.p_unique_max;
		r.results["p_unique_max_se"] = e.p_unique_max_se;
		r.results["p_acyclic"] = e.p_acyclic;
		r.results["p_acyclic_se"] = e.p_acyclic_se;
		r.results["cov_shared"] = e.cov_shared;
	});
	s->add_option("--k", t->k)->capture_default_str();
	s->add_option("--samples", t->samples)->capture_default_str();

	auto ar = std::make_shared<ArrowArgs>();
	s = leaf(*g, ctx, "arrow", "agreement probability of three threshold functions against (eps/2)^18",
		[ar, &ctx](Report& r) {
			if (ar->thresholds.size() != 3)
				throw std::invalid_argument("--thresholds takes three values");
			r.inputs["thresholds"] = ar->thresholds;
			r.inputs["eps"] = ar->eps;
			r.inputs["samples"] = ar->samples;
			const GaussianArrowCheck c = gaussian_arrow_bound_check(
				{ar->thresholds[0], ar->thresholds[1], ar->thresholds[2]}, ar->eps, ar->samples, ctx.options.seed);
			r.results["p_agree"] = c.p_agree;
			r.results["std_error"] = c.std_error;
			r.results["bound"] = c.bound;
			r.results["applicable"] = c.applicable;
			r.gate("gaussian_arrow", c.ok);
		});
	s->add_option("--thresholds", ar->thresholds)->delimiter(',');
	s->add_option("--eps", ar->eps)->capture_default_str();
	s->add_option("--samples", ar->samples)->capture_default_str();

	leaf(*g, ctx, "crossover", "correlation where majority predictability crosses one half", [](Report& r) {
		const double c = predictability_crossover();
		r.results["crossover"] = c;
		r.results["predictability"] = majority_predictability(c);
	});
}

} // namespace qsc::cli
