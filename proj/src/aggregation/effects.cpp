#include "qsc/aggregation/effects.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qsc/boolean/biased.hpp"
#include "qsc/rng.hpp"

namespace qsc {

namespace {

double as_zero_one(const BooleanFunction& f, std::uint64_t x)
{
	return f.codomain() == Codomain::PlusMinusOne ? (1.0 + f[x]) / 2.0 : f[x];
}

} // namespace

void FiniteDistribution::validate() const
{
	if (n < 1 || n > 63)
		throw std::invalid_argument("distribution arity must be in [1, 63]");
	if (support.size() != weights.size() || support.empty())
		throw std::invalid_argument("support and weights must be nonempty and of equal length");
	double s = 0.0;
	for (std::size_t j = 0; j < support.size(); ++j) {
		if (weights[j] < 0.0)
			throw std::invalid_argument("negative weight");
		if (support[j] >> n)
			throw std::invalid_argument("support point has bits beyond n");
		s += weights[j];
	}
	if (std::abs(s - 1.0) > 1e-12)
		throw std::invalid_argument("weights must sum to 1");
}

double FiniteDistribution::marginal(int i) const
{
	double s = 0.0;
	for (std::size_t j = 0; j < support.size(); ++j)
		if ((support[j] >> i) & 1u)
			s += weights[j];
	return s;
}

FiniteDistribution FiniteDistribution::product(const std::vector<double>& p)
{
	FiniteDistribution mu;
	mu.n = static_cast<int>(p.size());
	if (mu.n > 24)
		throw std::invalid_argument("product distribution is tabulated; n <= 24");
	for (std::uint64_t x = 0; x < (std::uint64_t{1} << mu.n); ++x) {
		double w = 1.0;
		for (int i = 0; i < mu.n; ++i)
			w *= ((x >> i) & 1u) ? p[static_cast<std::size_t>(i)] : 1.0 - p[static_cast<std::size_t>(i)];
		mu.support.push_back(x);
		mu.weights.push_back(w);
	}
	return mu;
}

FiniteDistribution FiniteDistribution::identical_voters(int n, double p)
{
	FiniteDistribution mu;
	mu.n = n;
	mu.support = {0, (std::uint64_t{1} << n) - 1};
	mu.weights = {1.0 - p, p};
	return mu;
}

FiniteDistribution FiniteDistribution::random(int n, std::size_t support_size, std::uint64_t seed)
{
	const std::uint64_t cube = std::uint64_t{1} << n;
	if (support_size == 0 || support_size > cube)
		throw std::invalid_argument("support size must be in [1, 2^n]");
	SplitMix64 rng = stream(seed, 0);
	std::vector<std::uint64_t> pts(cube);
	for (std::uint64_t x = 0; x < cube; ++x)
		pts[x] = x;
	FiniteDistribution mu;
	mu.n = n;
	double total = 0.0;
	for (std::size_t j = 0; j < support_size; ++j) {
		std::swap(pts[j], pts[j + rng.below(cube - j)]);
		mu.support.push_back(pts[j]);
		mu.weights.push_back(rng.uniform() + 1e-3);
		total += mu.weights.back();
	}
	for (auto& w : mu.weights)
		w /= total;
	return mu;
}

nlohmann::json to_json(const FiniteDistribution& mu)
{
	nlohmann::json j;
	j["n"] = mu.n;
	auto& s = j["support"] = nlohmann::json::array();
	for (auto x : mu.support) {
		std::string bits;
		for (int i = 0; i < mu.n; ++i)
			bits += ((x >> i) & 1u) ? '1' : '0';
		s.push_back(bits);
	}
	j["weights"] = mu.weights;
	return j;
}

FiniteDistribution distribution_from_json(const nlohmann::json& j)
{
	FiniteDistribution mu;
	mu.weights = j.at("weights").get<std::vector<double>>();
	for (const auto& s : j.at("support")) {
		const std::string bits = s.get<std::string>();
		if (mu.n == 0)
			mu.n = static_cast<int>(bits.size());
		if (static_cast<int>(bits.size()) != mu.n)
			throw std::invalid_argument("support strings differ in length");
		std::uint64_t x = 0;
		for (int i = 0; i < mu.n; ++i) {
			if (bits[static_cast<std::size_t>(i)] == '1')
				x |= std::uint64_t{1} << i;
			else if (bits[static_cast<std::size_t>(i)] != '0')
				throw std::invalid_argument("support strings use 0 and 1");
		}
		mu.support.push_back(x);
	}
	if (j.contains("n") && j.at("n").get<int>() != mu.n)
		throw std::invalid_argument("n disagrees with the support strings");
	mu.validate();
	return mu;
}

double expectation(const BooleanFunction& f, const FiniteDistribution& mu)
{
	if (f.n() != mu.n)
		throw std::invalid_argument("function and distribution arities differ");
	double s = 0.0;
	for (std::size_t j = 0; j < mu.support.size(); ++j)
		s += mu.weights[j] * as_zero_one(f, mu.support[j]);
	return s;
}

EffectsReport effects(const BooleanFunction& f, const FiniteDistribution& mu)
{
	mu.validate();
	if (f.n() != mu.n)
		throw std::invalid_argument("function and distribution arities differ");
	const double mean = expectation(f, mu);
	EffectsReport r;
	for (int k = 0; k < mu.n; ++k) {
		double p1 = 0.0;
		double f1 = 0.0;
		double f0 = 0.0;
		double pivot = 0.0;
		for (std::size_t j = 0; j < mu.support.size(); ++j) {
			const std::uint64_t x = mu.support[j];
			const double v = as_zero_one(f, x);
			if ((x >> k) & 1u) {
				p1 += mu.weights[j];
				f1 += mu.weights[j] * v;
			} else {
				f0 += mu.weights[j] * v;
			}
			if (v != as_zero_one(f, x ^ (std::uint64_t{1} << k)))
				pivot += mu.weights[j];
		}
		const double p0 = 1.0 - p1;
		const bool defined = p1 > 0.0 && p0 > 0.0;
		const double e = defined ? f1 / p1 - f0 / p0 : 0.0;
		// E[f (x_k - p)]
		const double cov = f1 - mean * p1;
		r.marginal.push_back(p1);
		r.effect.push_back(e);
		r.defined.push_back(defined);
		r.covariance.push_back(cov);
		r.pivot_influence.push_back(pivot);
		if (defined && std::abs(cov - p1 * p0 * e) > 1e-12)
			r.covariance_identity = false;
	}
	return r;
}

BooleanFunction weighted_majority(const std::vector<double>& w, double q)
{
	const int n = static_cast<int>(w.size());
	return BooleanFunction::tabulate(
		n,
		[&](std::uint64_t x) {
			double s = 0.0;
			for (int i = 0; i < n; ++i)
				s += w[static_cast<std::size_t>(i)] * (2.0 * static_cast<double>((x >> i) & 1u) - 2.0 * q);
			return s > 0.0 ? 1 : 0;
		},
		Codomain::ZeroOne);
}

WeightedMajorityCheck weighted_majority_bound_check(const std::vector<double>& w, const FiniteDistribution& mu, double q, double p, double delta)
{
	mu.validate();
	if (static_cast<int>(w.size()) != mu.n)
		throw std::invalid_argument("one weight per voter");
	double W = 0.0;
	for (double x : w) {
		if (x < 0.0)
			throw std::invalid_argument("weights must be nonnegative");
		W += x;
	}
	if (W <= 0.0)
		throw std::invalid_argument("weights must not all vanish");
	if (!(q > 0.0 && q < 1.0))
		throw std::invalid_argument("q must lie in (0, 1)");
	const BooleanFunction f = weighted_majority(w, q);
	const EffectsReport e = effects(f, mu);
	double wp = 0.0;
	double we = 0.0;
	for (int i = 0; i < mu.n; ++i) {
		const double pi = e.marginal[static_cast<std::size_t>(i)];
		wp += w[static_cast<std::size_t>(i)] * pi;
		we += w[static_cast<std::size_t>(i)] * pi * (1.0 - pi) * e.effect[static_cast<std::size_t>(i)];
	}
	WeightedMajorityCheck c;
	c.q = q;
	c.p = p < 0.0 ? wp / W : p;
	if (!(c.p > q && c.p < 1.0 + 1e-15))
		throw std::invalid_argument("the bound needs q < p <= 1");
	c.first_condition = std::abs(wp - c.p * W) <= 1e-12 * std::max(1.0, W);
	const double unit = c.p * (1.0 - c.p) * W;
	c.delta = delta < 0.0 ? (unit > 0.0 ? std::max(0.0, we / unit) : 0.0) : delta;
	c.second_condition = we <= unit * c.delta + 1e-12;
	c.mu_f = expectation(f, mu);
	c.bound = 1.0 - c.delta * c.p * (1.0 - c.p) / (c.p - q);
	c.ok = c.mu_f >= c.bound - 1e-12;
	return c;
}

MixtureExample mixture_of_biases(int n, double eps, int grid)
{
	if (n < 1 || n % 2 == 0)
		throw std::invalid_argument("mixture example needs odd n");
	if (!(eps > 0.0 && eps < 0.5))
		throw std::invalid_argument("eps must lie in (0, 1/2)");
	MixtureExample m;
	double acc = 0.0;
	for (int g = 0; g < grid; ++g) {
		const double t = eps + (1.0 - eps) * (g + 0.5) / grid;
		// P[Bin(n, t) > n/2] with log-space pmf
		double tail = 0.0;
		for (int j = n / 2 + 1; j <= n; ++j)
			tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * std::log(t)
				+ (n - j) * std::log1p(-t));
		acc += tail;
	}
	m.alice_wins = acc / grid;
	m.bound = 1.0 / (2.0 * (1.0 - eps));
	m.ok = m.alice_wins < m.bound;
	return m;
}

PoincareCheck biased_poincare(const BooleanFunction& f, double p)
{
	const BiasedMeasure mu(f.n(), p);
	PoincareCheck c;
	for (int i = 0; i < f.n(); ++i)
		c.influence_sum += biased_influence(f, mu, i);
	c.variance = biased_variance(f, mu);
	c.ok = c.influence_sum >= c.variance - 1e-12;
	return c;
}

DictatorExtremality dictator_minimizers(int n, double p)
{
	if (n < 1 || n > 4)
		throw std::invalid_argument("exhaustive search needs 1 <= n <= 4");
	const std::size_t size = std::size_t{1} << n;
	const BiasedMeasure mu(n, p);
	DictatorExtremality d;
	d.p = p;
	d.min_value = INFINITY;
	std::vector<std::pair<std::uint64_t, double>> found;
	for (std::uint64_t t = 0; t < (std::uint64_t{1} << size); ++t) {
		if (static_cast<std::size_t>(std::popcount(t)) * 2 != size)
			continue;
		const BooleanFunction f = BooleanFunction::tabulate(
			n, [&](std::uint64_t x) { return ((t >> x) & 1u) ? 1 : -1; }, Codomain::PlusMinusOne);
		if (!is_monotone(f))
			continue;
		const double v = biased_expectation(f, mu);
		found.emplace_back(t, v);
		d.min_value = std::min(d.min_value, v);
	}
	for (auto [t, v] : found)
		if (v <= d.min_value + 1e-12)
			d.minimizers.push_back(t);
	d.only_dictators = !d.minimizers.empty();
	for (auto t : d.minimizers) {
		bool dict = false;
		for (int i = 0; i < n && !dict; ++i) {
			bool same = true;
			for (std::size_t x = 0; x < size && same; ++x)
				same = (((t >> x) & 1u) != 0) == (((x >> i) & 1u) != 0);
			dict = same;
		}
		d.only_dictators = d.only_dictators && dict;
	}
	return d;
}

} // namespace qsc
