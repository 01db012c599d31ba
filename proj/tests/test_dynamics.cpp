#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "qsc/dynamics/graph.hpp"
#include "qsc/dynamics/majority.hpp"

using namespace qsc;

namespace {

// majority of neighbour opinions, straight from an edge list
OpinionState step_oracle(int n, const std::vector<std::pair<int, int>>& edges, const OpinionState& x)
{
	std::vector<int> sum(static_cast<std::size_t>(n), 0);
	for (auto [u, v] : edges) {
		sum[static_cast<std::size_t>(u)] += x[static_cast<std::size_t>(v)];
		sum[static_cast<std::size_t>(v)] += x[static_cast<std::size_t>(u)];
	}
	OpinionState y(static_cast<std::size_t>(n));
	for (int v = 0; v < n; ++v)
		y[static_cast<std::size_t>(v)] = sum[static_cast<std::size_t>(v)] > 0 ? 1 : -1;
	return y;
}

long long energy_oracle(const std::vector<std::pair<int, int>>& edges, const OpinionState& next, const OpinionState& cur)
{
	long long l = 0;
	for (auto [u, v] : edges) {
		l += next[static_cast<std::size_t>(u)] != cur[static_cast<std::size_t>(v)];
		l += next[static_cast<std::size_t>(v)] != cur[static_cast<std::size_t>(u)];
	}
	return 2 * l;
}

} // namespace

TEST_CASE("graph generators")
{
	const OpinionGraph k4 = complete_graph(4);
	CHECK(k4.vertices() == 4);
	CHECK(k4.edges() == 6);
	CHECK(k4.all_degrees_odd());

	const OpinionGraph b = complete_bipartite_graph(3, 5);
	CHECK(b.edges() == 15);
	CHECK(b.degree(0) == 5);
	CHECK(b.degree(7) == 3);

	const OpinionGraph t = torus_with_antipodal_matching(6);
	CHECK(t.vertices() == 36);
	for (int v = 0; v < 36; ++v)
		CHECK(t.degree(v) == 5);

	for (std::uint64_t seed = 1; seed <= 5; ++seed) {
		const OpinionGraph g = random_regular_graph(3, 50, seed);
		std::set<std::pair<int, int>> seen;
		for (auto [u, v] : g.edge_list()) {
			CHECK(u != v);
			CHECK(seen.insert({std::min(u, v), std::max(u, v)}).second);
		}
		for (int v = 0; v < 50; ++v)
			CHECK(g.degree(v) == 3);
	}
	CHECK(random_regular_graph(3, 50, 9).edge_list() == random_regular_graph(3, 50, 9).edge_list());

	CHECK_FALSE(complete_graph(5).all_degrees_odd());
	CHECK_THROWS_AS(run_to_period(complete_graph(5), random_state(5, 0.5, 1)), std::invalid_argument);
	CHECK_NOTHROW(OpinionGraph(5, complete_graph(4).edge_list(), false));
	CHECK_THROWS_AS(OpinionGraph(3, {{0, 0}}, false), std::invalid_argument);
	CHECK_THROWS_AS(OpinionGraph(3, {{0, 1}, {1, 0}}, false), std::invalid_argument);
	CHECK_THROWS_AS(random_regular_graph(3, 7, 1), std::invalid_argument);
	CHECK_THROWS_AS(torus_with_antipodal_matching(5), std::invalid_argument);
	CHECK(make_graph("complete_bipartite:a=3,b=3").edges() == 9);
}

TEST_CASE("majority step agrees with the edge-list oracle")
{
	const OpinionGraph g = random_regular_graph(5, 40, 3);
	const auto edges = g.edge_list();
	for (std::uint64_t s = 0; s < 20; ++s) {
		const OpinionState x = random_state(40, 0.5, s);
		CHECK(majority_step(g, x) == step_oracle(40, edges, x));
		CHECK(majority_step(g, x, 2) == step_oracle(40, edges, x));
	}
}

TEST_CASE("orbits close with period at most two and the energy identity holds")
{
	for (const char* spec : {"random_regular:d=3,n=60,seed=1", "random_regular:d=5,n=30,seed=2", "torus:side=6",
		     "complete:n=8", "complete_bipartite:a=3,b=5"}) {
		const OpinionGraph g = make_graph(spec);
		const auto edges = g.edge_list();
		for (std::uint64_t s = 0; s < 10; ++s) {
			const OpinionState x0 = random_state(g.vertices(), 0.5, s);
			const DynamicsTrace tr = run_to_period(g, x0);
			CHECK(tr.period >= 1);
			CHECK(tr.period <= 2);
			CHECK(tr.energy_identity);
			CHECK(tr.energy_nonincreasing);
			CHECK(tr.coupling_nonnegative);
			const std::size_t e = static_cast<std::size_t>(tr.entry_time);
			CHECK(tr.states[e] == tr.states[e + static_cast<std::size_t>(tr.period)]);
			for (std::size_t t = 0; t < tr.energy.size(); ++t)
				CHECK(tr.energy[t] == energy_oracle(edges, tr.states[t + 1], tr.states[t]));
			for (std::size_t t = 1; t < tr.energy.size(); ++t)
				CHECK(tr.energy[t] - tr.energy[t - 1] == -tr.coupling[t]);
		}
	}
}

TEST_CASE("complete bipartite graph can oscillate")
{
	// each side copies the other, so opposite unanimous sides swap forever
	const OpinionGraph g = complete_bipartite_graph(3, 3);
	OpinionState x{1, 1, 1, -1, -1, -1};
	const DynamicsTrace tr = run_to_period(g, x);
	CHECK(tr.period == 2);
	CHECK(tr.entry_time == 0);
}

TEST_CASE("retention sweeps are coupled monotonically")
{
	const OpinionGraph g = make_graph("torus:side=6");
	const RetentionSweep s = retention_sweep(g, {0.3, 0.45, 0.5, 0.55, 0.7}, 400, 5, 1);
	CHECK(s.monotone);
	for (std::size_t j = 1; j < s.points.size(); ++j)
		CHECK(s.points[j].estimate >= s.points[j - 1].estimate);
	CHECK(s.points.back().estimate > 0.5);
	const RetentionEstimate a = retention_experiment(g, 0.6, 300, 2, 1);
	const RetentionEstimate b = retention_experiment(g, 0.6, 300, 2, 3);
	CHECK(a.estimate == b.estimate);
	CHECK(retention_experiment(g, 1.0, 50, 1, 1).estimate == 1.0);
}

TEST_CASE("edge-list round trip")
{
	const OpinionGraph g = random_regular_graph(3, 20, 4);
	std::stringstream ss;
	write_edge_list(ss, g);
	const OpinionGraph h = read_edge_list(ss);
	CHECK(h.vertices() == 20);
	CHECK(h.edge_list() == g.edge_list());

	std::stringstream isolated("# vertices 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
	CHECK_THROWS_AS(read_edge_list(isolated), std::invalid_argument);
	std::stringstream bad("0 x\n");
	CHECK_THROWS(read_edge_list(bad));
}
