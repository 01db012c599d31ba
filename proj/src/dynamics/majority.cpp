#include "qsc/dynamics/majority.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "qsc/parallel.hpp"

namespace qsc {

namespace {

constexpr int kParallelVertexBlock = 1 << 16;

int neighbor_sum(const OpinionGraph& g, const OpinionState& x, int v)
{
	int s = 0;
	for (int w : g.neighbors(v))
		s += x[static_cast<std::size_t>(w)];
	return s;
}

// L_t from X(t) and X(t+1)
long long energy(const OpinionGraph& g, const OpinionState& now, const OpinionState& next)
{
	long long disagree = 0;
	for (int u = 0; u < g.vertices(); ++u)
		for (int v : g.neighbors(u))
			if (next[static_cast<std::size_t>(u)] != now[static_cast<std::size_t>(v)])
				++disagree;
	return 2 * disagree;
}

std::string dump(const OpinionState& x)
{
	std::string s;
	for (auto v : x)
		s += v > 0 ? '+' : '-';
	return s;
}

std::size_t state_hash(const OpinionState& x)
{
	std::size_t h = 1469598103934665603ull;
	for (auto v : x)
		h = (h ^ static_cast<std::size_t>(v > 0)) * 1099511628211ull;
	return h;
}

} // namespace

OpinionState majority_step(const OpinionGraph& g, const OpinionState& x, int threads)
{
	if (static_cast<int>(x.size()) != g.vertices())
		throw std::invalid_argument("state size differs from the vertex count");
	OpinionState next(x.size());
	const int n = g.vertices();
	auto update = [&](int v) {
		const int s = neighbor_sum(g, x, v);
		if (s == 0)
			throw std::logic_error("tied neighbourhood; degrees must be odd");
		next[static_cast<std::size_t>(v)] = s > 0 ? 1 : -1;
	};
	if (n < kParallelVertexBlock || resolve_threads(threads) == 1) {
		for (int v = 0; v < n; ++v)
			update(v);
	} else {
		const auto blocks = static_cast<std::size_t>((n + kParallelVertexBlock - 1) / kParallelVertexBlock);
		parallel_for(
			blocks,
			[&](std::size_t b) {
				const int end = std::min(n, static_cast<int>((b + 1) * kParallelVertexBlock));
				for (int v = static_cast<int>(b) * kParallelVertexBlock; v < end; ++v)
					update(v);
			},
			threads);
	}
	return next;
}

DynamicsTrace run_to_period(const OpinionGraph& g, const OpinionState& x0, int t_max, int threads)
{
	if (!g.all_degrees_odd())
		throw std::invalid_argument("majority dynamics needs every degree odd");
	for (auto v : x0)
		if (v != 1 && v != -1)
			throw std::invalid_argument("opinions must be +1 or -1");
	DynamicsTrace tr;
	tr.states.push_back(x0);
	std::unordered_multimap<std::size_t, int> seen;
	seen.emplace(state_hash(x0), 0);
	for (int t = 1;; ++t) {
		if (t > t_max)
			throw std::logic_error("no orbit of period <= 2 within t_max steps; last state " + dump(tr.states.back()));
		tr.states.push_back(majority_step(g, tr.states.back(), threads));
		const auto& cur = tr.states.back();
		if (cur == tr.states[static_cast<std::size_t>(t - 1)]) {
			tr.period = 1;
			tr.entry_time = t - 1;
			break;
		}
		if (t >= 2 && cur == tr.states[static_cast<std::size_t>(t - 2)]) {
			tr.period = 2;
			tr.entry_time = t - 2;
			break;
		}
		// a longer cycle would contradict the period-two theorem
		const std::size_t h = state_hash(cur);
		for (auto [it, end] = seen.equal_range(h); it != end; ++it)
			if (tr.states[static_cast<std::size_t>(it->second)] == cur)
				throw std::logic_error("cycle of length " + std::to_string(t - it->second) + " through state " + dump(cur));
		seen.emplace(h, t);
	}

	const std::size_t T = tr.states.size() - 1;
	tr.energy.resize(T);
	for (std::size_t t = 0; t < T; ++t)
		tr.energy[t] = energy(g, tr.states[t], tr.states[t + 1]);
	tr.coupling.assign(T, 0);
	for (std::size_t t = 1; t < T; ++t) {
		long long j = 0;
		for (int v = 0; v < g.vertices(); ++v) {
			const auto sv = static_cast<std::size_t>(v);
			const long long jv = static_cast<long long>(tr.states[t + 1][sv] - tr.states[t - 1][sv]) * neighbor_sum(g, tr.states[t], v);
			if (jv < 0)
				tr.coupling_nonnegative = false;
			j += jv;
		}
		tr.coupling[t] = j;
		if (tr.energy[t] > tr.energy[t - 1])
			tr.energy_nonincreasing = false;
		if (tr.energy[t] - tr.energy[t - 1] != -j)
			tr.energy_identity = false;
	}
	if (!tr.energy_nonincreasing || !tr.energy_identity || !tr.coupling_nonnegative)
		throw std::logic_error("energy certificate failed from state " + dump(x0));
	return tr;
}

void write_trace_csv(std::ostream& os, const DynamicsTrace& trace)
{
	os << "t,L_t,J_t,hamming_to_final\n";
	const OpinionState& last = trace.states.back();
	for (std::size_t t = 0; t < trace.energy.size(); ++t) {
		int ham = 0;
		for (std::size_t v = 0; v < last.size(); ++v)
			ham += trace.states[t][v] != last[v];
		os << t << ',' << trace.energy[t] << ',';
		if (t > 0)
			os << trace.coupling[t];
		os << ',' << ham << '\n';
	}
}

OpinionState random_state(int vertices, double p, std::uint64_t seed)
{
	SplitMix64 rng = stream(seed, 0);
	OpinionState x(static_cast<std::size_t>(vertices));
	for (auto& v : x)
		v = rng.uniform() < p ? 1 : -1;
	return x;
}

RetentionEstimate retention_experiment(const OpinionGraph& g, double p, std::uint64_t runs, std::uint64_t seed, int threads)
{
	if (!(p >= 0.0 && p <= 1.0))
		throw std::invalid_argument("p must lie in [0, 1]");
	const auto n = static_cast<std::size_t>(g.vertices());
	const auto m = monte_carlo<1>(
		runs, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			OpinionState x(n);
			for (auto& v : x)
				v = rng.uniform() < p ? 1 : -1;
			const DynamicsTrace tr = run_to_period(g, x);
			long long sum = 0;
			for (auto v : tr.even_limit())
				sum += v;
			out[0] = sum > 0 ? 1.0 : (sum < 0 ? 0.0 : 0.5);
		},
		threads);
	return {p, m[0].mean(), m[0].std_error(), runs};
}

RetentionSweep retention_sweep(const OpinionGraph& g, const std::vector<double>& ps, std::uint64_t runs, std::uint64_t seed, int threads)
{
	RetentionSweep s;
	for (double p : ps) {
		s.points.push_back(retention_experiment(g, p, runs, seed, threads));
		if (s.points.size() >= 2) {
			const auto& a = s.points[s.points.size() - 2];
			const auto& b = s.points.back();
			if ((b.p >= a.p && b.estimate < a.estimate) || (b.p < a.p && b.estimate > a.estimate))
				s.monotone = false;
		}
	}
	return s;
}

} // namespace qsc
