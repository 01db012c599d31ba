#include <fstream>
#include <memory>
#include <sstream>

#include "report.hpp"

#include "qsc/dynamics/graph.hpp"
#include "qsc/dynamics/majority.hpp"

namespace qsc::cli {

namespace {

struct RunArgs {
	std::string graph = "random_regular:d=3,n=100,seed=1";
	double p = 0.5;
	int tmax = 100000;
	std::string trace;
};

struct BatchArgs {
	int d = 3;
	int n = 100;
	int graphs = 50;
	int inits = 10;
};

struct RetentionArgs {
	std::string graph = "torus:side=6";
	std::vector<double> ps{0.5, 0.55, 0.6, 0.65, 0.7};
	std::uint64_t runs = 2000;
};

struct GraphArgs {
	std::string graph;
	std::string save;
};

void trace_rows(const DynamicsTrace& t, Report& r)
{
	std::ostringstream os;
	write_trace_csv(os, t);
	std::istringstream is(os.str());
	std::string line;
	bool first = true;
	while (std::getline(is, line)) {
		std::vector<std::string> cells;
		std::stringstream ls(line);
		std::string c;
		while (std::getline(ls, c, ','))
			cells.push_back(c);
		if (first)
			r.csv_header(std::move(cells));
		else
			r.csv_row(std::move(cells));
		first = false;
	}
}

} // namespace

void add_dynamics(CLI::App& app, Context& ctx)
{
	CLI::App* g = group(app, "dynamics", "Synchronous majority dynamics on graphs with odd degrees");

	auto ru = std::make_shared<RunArgs>();
	CLI::App* s = leaf(*g, ctx, "run", "one orbit from a random start, with the energy trace", [ru, &ctx](Report& r) {
		r.inputs["graph"] = ru->graph;
		r.inputs["p"] = ru->p;
		r.inputs["tmax"] = ru->tmax;
		const OpinionGraph gr = load_graph(ru->graph);
		const OpinionState x0 = random_state(gr.vertices(), ru->p, ctx.options.seed);
		const DynamicsTrace t = run_to_period(gr, x0, ru->tmax, ctx.options.threads);
		r.results["vertices"] = gr.vertices();
		r.results["edges"] = gr.edges();
		r.results["period"] = t.period;
		r.results["entry_time"] = t.entry_time;
		r.results["energy"] = t.energy;
		long long plus = 0;
		for (auto v : t.even_limit())
			plus += v > 0;
		r.results["limit_plus"] = plus;
		r.gate("period_at_most_2", t.period <= 2);
		r.gate("energy_nonincreasing", t.energy_nonincreasing);
		r.gate("energy_identity", t.energy_identity);
		r.gate("coupling_nonnegative", t.coupling_nonnegative);
		trace_rows(t, r);
		if (!ru->trace.empty()) {
			std::ofstream os(ru->trace);
			if (!os)
				throw std::runtime_error("cannot write " + ru->trace);
			write_trace_csv(os, t);
		}
	});
	s->add_option("--graph", ru->graph, "generator spec or edge-list file")->capture_default_str();
	s->add_option("--p", ru->p, "probability of a +1 start")->capture_default_str();
	s->add_option("--tmax", ru->tmax)->capture_default_str();
	s->add_option("--trace", ru->trace, "write the t, L_t, J_t, hamming_to_final CSV here");

	auto ba = std::make_shared<BatchArgs>();
	s = leaf(*g, ctx, "batch", "period and energy checks over random regular graphs and starts", [ba, &ctx](Report& r) {
		r.inputs["d"] = ba->d;
		r.inputs["n"] = ba->n;
		r.inputs["graphs"] = ba->graphs;
		r.inputs["inits"] = ba->inits;
		int max_period = 0;
		int max_entry = 0;
		std::uint64_t orbits = 0;
		bool nonincreasing = true;
		bool identity = true;
		r.csv_header({"graph", "init", "period", "entry_time"});
		for (int gi = 0; gi < ba->graphs; ++gi) {
			const std::uint64_t gseed = ctx.options.seed * 1000003u + static_cast<std::uint64_t>(gi);
			const OpinionGraph gr = random_regular_graph(ba->d, ba->n, gseed);
			for (int ii = 0; ii < ba->inits; ++ii) {
				const OpinionState x0 = random_state(gr.vertices(), 0.5, gseed * 7919u + static_cast<std::uint64_t>(ii));
				const DynamicsTrace t = run_to_period(gr, x0, 100000, 1);
				max_period = std::max(max_period, t.period);
				max_entry = std::max(max_entry, t.entry_time);
				nonincreasing = nonincreasing && t.energy_nonincreasing;
				identity = identity && t.energy_identity;
				++orbits;
				r.csv_row({std::to_string(gi), std::to_string(ii), std::to_string(t.period), std::to_string(t.entry_time)});
			}
		}
		r.results["orbits"] = orbits;
		r.results["max_period"] = max_period;
		r.results["max_entry_time"] = max_entry;
		r.gate("period_at_most_2", max_period <= 2);
		r.gate("energy_nonincreasing", nonincreasing);
		r.gate("energy_identity", identity);
	});
	s->add_option("--d", ba->d, "odd degree")->capture_default_str();
	s->add_option("--n", ba->n, "vertices")->capture_default_str();
	s->add_option("--graphs", ba->graphs)->capture_default_str();
	s->add_option("--inits", ba->inits)->capture_default_str();

	auto re = std::make_shared<RetentionArgs>();
	s = leaf(*g, ctx, "retention", "probability that the limit keeps the initial majority", [re, &ctx](Report& r) {
		r.inputs["graph"] = re->graph;
		r.inputs["p"] = re->ps;
		r.inputs["runs"] = re->runs;
		const OpinionGraph gr = load_graph(re->graph);
		const RetentionSweep sw = retention_sweep(gr, re->ps, re->runs, ctx.options.seed, ctx.options.threads);
		std::vector<double> est;
		std::vector<double> se;
		r.csv_header({"p", "estimate", "std_error"});
		for (const auto& pt : sw.points) {
			est.push_back(pt.estimate);
			se.push_back(pt.std_error);
			r.csv_row({num(pt.p), num(pt.estimate), num(pt.std_error)});
		}
		r.results["estimate"] = est;
		r.results["std_error"] = se;
		r.results["monotone"] = sw.monotone;
	});
	s->add_option("--graph", re->graph)->capture_default_str();
	s->add_option("--p", re->ps)->delimiter(',');
	s->add_option("--runs", re->runs)->capture_default_str();

	auto gg = std::make_shared<GraphArgs>();
	s = leaf(*g, ctx, "graph", "build a graph and report its degrees", [gg](Report& r) {
		r.inputs["graph"] = gg->graph;
		const OpinionGraph gr = load_graph(gg->graph, false);
		r.results["vertices"] = gr.vertices();
		r.results["edges"] = gr.edges();
		r.results["all_degrees_odd"] = gr.all_degrees_odd();
		if (!gg->save.empty()) {
			std::ofstream os(gg->save);
			if (!os)
				throw std::runtime_error("cannot write " + gg->save);
			write_edge_list(os, gr);
			r.results["saved"] = gg->save;
		}
	});
	s->add_option("--graph", gg->graph)->required();
	s->add_option("--save", gg->save, "write as an edge list");
}

} // namespace qsc::cli
