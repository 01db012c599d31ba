#include "qsc/aggregation/tree_ising.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "qsc/parallel.hpp"

namespace qsc {

void TreeIsingSpec::validate() const
{
	if (r < 1 || r > kTreeIsingMaxHeight)
		throw std::invalid_argument("tree height must be in [1, 10]");
	if (!(eps >= 0.0 && eps < 0.5))
		throw std::invalid_argument("eps must lie in [0, 1/2)");
	if (!(delta >= 0.0 && delta < 0.5))
		throw std::invalid_argument("delta must lie in [0, 1/2)");
}

std::uint64_t TreeIsingSpec::leaves() const
{
	std::uint64_t v = 1;
	for (int i = 0; i < r; ++i)
		v *= 3;
	return v;
}

namespace {

double maj3(double a, double b, double c)
{
	return a * b + a * c + b * c - 2.0 * a * b * c;
}

// p[k][b] = P[m_v = 1 | y_v = b] at height k
std::vector<std::array<double, 2>> height_table(const TreeIsingSpec& s)
{
	std::vector<std::array<double, 2>> p(static_cast<std::size_t>(s.r) + 1);
	p[0] = {s.delta, 1.0};
	for (int k = 0; k < s.r; ++k) {
		const auto& c = p[static_cast<std::size_t>(k)];
		for (int b = 0; b < 2; ++b) {
			const double q = (1.0 - s.eps) * c[static_cast<std::size_t>(b)] + s.eps * c[static_cast<std::size_t>(1 - b)];
			p[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(b)] = maj3(q, q, q);
		}
	}
	return p;
}

// P[m = 1 | y_leaf = b] when the leaf's own vote is 1 with probability
// leaf_one; the path from the leaf to the root is walked upward.
double conditional_root(const TreeIsingSpec& s, const std::vector<std::array<double, 2>>& p, int b, double leaf_one)
{
	const double theta = 1.0 - 2.0 * s.eps;
	// a[c] = P[m_v = 1 | y_v = c, y_leaf = b] for the current path vertex v
	std::array<double, 2> a{leaf_one, leaf_one};
	for (int j = 1; j <= s.r; ++j) {
		const auto& below = p[static_cast<std::size_t>(j) - 1];
		// likelihood of y_leaf = b given the label of the path child
		const double reach = std::pow(theta, j - 1);
		std::array<double, 2> next{};
		for (int c = 0; c < 2; ++c) {
			double num = 0.0;
			double den = 0.0;
			for (int cc = 0; cc < 2; ++cc) {
				const double edge = cc == c ? 1.0 - s.eps : s.eps;
				const double like = cc == b ? (1.0 + reach) / 2.0 : (1.0 - reach) / 2.0;
				num += edge * like * a[static_cast<std::size_t>(cc)];
				den += edge * like;
			}
			const double child = den > 0.0 ? num / den : 0.0;
			const double sib = (1.0 - s.eps) * below[static_cast<std::size_t>(c)] + s.eps * below[static_cast<std::size_t>(1 - c)];
			next[static_cast<std::size_t>(c)] = maj3(child, sib, sib);
		}
		a = next;
	}
	const double same = (1.0 + std::pow(theta, s.r)) / 2.0;
	return same * a[static_cast<std::size_t>(b)] + (1.0 - same) * a[static_cast<std::size_t>(1 - b)];
}

struct Tree {
	int r;
	std::vector<std::uint64_t> level_start;
	std::uint64_t nodes = 0;

	explicit Tree(int height) : r(height)
	{
		std::uint64_t width = 1;
		for (int l = 0; l <= r; ++l) {
			level_start.push_back(nodes);
			nodes += width;
			width *= 3;
		}
	}
	std::uint64_t at(int level, std::uint64_t j) const { return level_start[static_cast<std::size_t>(level)] + j; }
	std::uint64_t width(int level) const { return (level + 1 < static_cast<int>(level_start.size()) ? level_start[static_cast<std::size_t>(level) + 1] : nodes) - level_start[static_cast<std::size_t>(level)]; }
};

// Fills votes at the leaves from labels and the raise coins, then
// recursive majority upward; returns the root value.
int evaluate(const Tree& t, const std::vector<std::uint8_t>& label, const std::vector<std::uint8_t>& raise, std::vector<std::uint8_t>& m)
{
	const std::uint64_t leaves = t.width(t.r);
	for (std::uint64_t j = 0; j < leaves; ++j)
		m[t.at(t.r, j)] = label[t.at(t.r, j)] | raise[j];
	for (int l = t.r - 1; l >= 0; --l)
		for (std::uint64_t j = 0; j < t.width(l); ++j) {
			const std::uint64_t c = t.at(l + 1, 3 * j);
			m[t.at(l, j)] = (m[c] + m[c + 1] + m[c + 2]) >= 2 ? 1 : 0;
		}
	return m[0];
}

// labels from a root value and per-vertex flip bits
void broadcast(const Tree& t, int root, const std::vector<std::uint8_t>& flip, std::vector<std::uint8_t>& label)
{
	label[0] = static_cast<std::uint8_t>(root);
	for (int l = 1; l <= t.r; ++l)
		for (std::uint64_t j = 0; j < t.width(l); ++j)
			label[t.at(l, j)] = label[t.at(l - 1, j / 3)] ^ flip[t.at(l, j)];
}

struct Event {
	const char* name;
	// votes are the leaf slice of m
	bool (*test)(const Tree&, const std::vector<std::uint8_t>&);
};

const Event kEvents[] = {
	{"x_first", [](const Tree& t, const std::vector<std::uint8_t>& m) { return m[t.at(t.r, 0)] == 1; }},
	{"x_second", [](const Tree& t, const std::vector<std::uint8_t>& m) { return m[t.at(t.r, 1)] == 1; }},
	{"x_last", [](const Tree& t, const std::vector<std::uint8_t>& m) { return m[t.nodes - 1] == 1; }},
	{"m", [](const Tree&, const std::vector<std::uint8_t>& m) { return m[0] == 1; }},
	{"first_block_majority", [](const Tree& t, const std::vector<std::uint8_t>& m) { return m[t.at(t.r - 1, 0)] == 1; }},
	{"first_block_all", [](const Tree& t, const std::vector<std::uint8_t>& m) {
		 const std::uint64_t c = t.at(t.r, 0);
		 return (m[c] & m[c + 1] & m[c + 2]) == 1;
	 }},
	{"first_or_last", [](const Tree& t, const std::vector<std::uint8_t>& m) { return (m[t.at(t.r, 0)] | m[t.nodes - 1]) == 1; }},
	{"half_of_votes", [](const Tree& t, const std::vector<std::uint8_t>& m) {
		 std::uint64_t ones = 0;
		 for (std::uint64_t j = 0; j < t.width(t.r); ++j)
			 ones += m[t.at(t.r, j)];
		 return 2 * ones >= t.width(t.r);
	 }},
};
constexpr std::size_t kEventCount = std::size(kEvents);
constexpr std::size_t kPairCount = kEventCount * (kEventCount - 1) / 2;

} // namespace

TreeIsingExact tree_ising_exact(const TreeIsingSpec& spec)
{
	spec.validate();
	const auto p = height_table(spec);
	TreeIsingExact e;
	e.mu_m = (p.back()[0] + p.back()[1]) / 2.0;
	e.vote_marginal = (1.0 + spec.delta) / 2.0;
	e.effect_y = conditional_root(spec, p, 1, 1.0) - conditional_root(spec, p, 0, spec.delta);
	const double up = 1.0 / (1.0 + spec.delta);
	const double given_one = up * conditional_root(spec, p, 1, 1.0) + (1.0 - up) * conditional_root(spec, p, 0, 1.0);
	e.effect_x = given_one - conditional_root(spec, p, 0, 0.0);
	return e;
}

double tree_ising_mu_claim(const TreeIsingSpec& spec)
{
	return 0.5 + spec.delta / 2.0;
}

double tree_ising_effect_claim(const TreeIsingSpec& spec)
{
	const double h = (spec.r - 1) / 2.0;
	return std::pow(1.0 - spec.eps / 2.0, h) + std::pow(2.0, -h);
}

bool tree_ising_mu_claim_applies(const TreeIsingSpec& spec)
{
	return spec.eps == spec.delta && spec.eps <= 0.01;
}

TreeIsingExperiment tree_ising_experiment(const TreeIsingSpec& spec, std::uint64_t samples, std::uint64_t seed, int threads)
{
	spec.validate();
	if (samples < 2)
		throw std::invalid_argument("need at least 2 samples");
	const Tree tree(spec.r);
	const std::uint64_t leaves = spec.leaves();

	// 0: m, 1: effect difference, then event indicators, then pair products
	constexpr std::size_t K = 2 + kEventCount + kPairCount;
	const auto moments = monte_carlo<K>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, K>& out) {
			thread_local std::vector<std::uint8_t> flip, raise, label, m;
			flip.assign(tree.nodes, 0);
			raise.assign(leaves, 0);
			label.assign(tree.nodes, 0);
			m.assign(tree.nodes, 0);
			for (std::uint64_t v = 1; v < tree.nodes; ++v)
				flip[v] = rng.bernoulli(spec.eps) ? 1 : 0;
			for (std::uint64_t j = 0; j < leaves; ++j)
				raise[j] = rng.bernoulli(spec.delta) ? 1 : 0;
			const int root = rng.bernoulli(0.5) ? 1 : 0;

			// forced leaf-0 label: root = b xor parity of flips on the path
			int path = 0;
			for (int l = 1; l <= spec.r; ++l)
				path ^= flip[tree.at(l, 0)];
			broadcast(tree, path, flip, label);
			const int m0 = evaluate(tree, label, raise, m);
			broadcast(tree, 1 ^ path, flip, label);
			const int m1 = evaluate(tree, label, raise, m);
			out[1] = static_cast<double>(m1 - m0);

			broadcast(tree, root, flip, label);
			out[0] = evaluate(tree, label, raise, m);
			std::array<bool, kEventCount> hit{};
			for (std::size_t e = 0; e < kEventCount; ++e) {
				hit[e] = kEvents[e].test(tree, m);
				out[2 + e] = hit[e] ? 1.0 : 0.0;
			}
			std::size_t k = 2 + kEventCount;
			for (std::size_t a = 0; a < kEventCount; ++a)
				for (std::size_t b = a + 1; b < kEventCount; ++b)
					out[k++] = hit[a] && hit[b] ? 1.0 : 0.0;
		},
		threads);

	TreeIsingExperiment x;
	x.spec = spec;
	x.samples = samples;
	x.mu_m = moments[0].mean();
	x.mu_m_se = moments[0].std_error();
	x.effect = moments[1].mean();
	x.effect_se = moments[1].std_error();
	x.exact = tree_ising_exact(spec);
	x.mu_claim = tree_ising_mu_claim(spec);
	x.mu_claim_applies = tree_ising_mu_claim_applies(spec);
	x.mu_ok = !x.mu_claim_applies || x.mu_m <= x.mu_claim + 3.0 * x.mu_m_se;
	x.effect_claim = tree_ising_effect_claim(spec);
	x.effect_ok = x.effect <= x.effect_claim + 3.0 * x.effect_se;

	const double n = static_cast<double>(samples);
	std::size_t k = 2 + kEventCount;
	for (std::size_t a = 0; a < kEventCount; ++a)
		for (std::size_t b = a + 1; b < kEventCount; ++b) {
			FkgPair f;
			f.a = kEvents[a].name;
			f.b = kEvents[b].name;
			f.p_a = moments[2 + a].mean();
			f.p_b = moments[2 + b].mean();
			f.p_ab = moments[k++].mean();
			f.std_error = std::sqrt(f.p_a * (1.0 - f.p_a) * f.p_b * (1.0 - f.p_b) / n);
			f.ok = f.p_ab >= f.p_a * f.p_b - 3.0 * f.std_error;
			x.fkg_ok = x.fkg_ok && f.ok;
			x.fkg.push_back(std::move(f));
		}
	return x;
}

} // namespace qsc
