#include "qsc/boolean/biased.hpp"

#include <cmath>
#include <stdexcept>

#include "qsc/boolean/analysis.hpp"

namespace qsc {

namespace {

void check_probability(double p)
{
	if (!(p > 0.0 && p < 1.0))
		throw std::domain_error("bias must lie in (0,1)");
}

// indicator of the "+1" outcome
BooleanFunction top_indicator(const BooleanFunction& f)
{
	switch (f.codomain()) {
	case Codomain::ZeroOne:
		return f;
	case Codomain::PlusMinusOne:
		return f.to_zero_one();
	case Codomain::Real:
		break;
	}
	throw std::invalid_argument("expected a pm1 or 01 function");
}

} // namespace

BiasedMeasure::BiasedMeasure(int n, double p) : p_(static_cast<std::size_t>(n), p)
{
	check_probability(p);
}

BiasedMeasure::BiasedMeasure(std::vector<double> p) : p_(std::move(p))
{
	for (double v : p_)
		check_probability(v);
}

double biased_expectation(const BooleanFunction& f, const BiasedMeasure& mu)
{
	if (mu.n() != f.n())
		throw std::invalid_argument("measure and function arity differ");
	std::vector<double> v = f.values();
	std::size_t len = v.size();
	for (int i = f.n() - 1; i >= 0; --i) {
		const std::size_t half = len / 2;
		const double p = mu[i];
		for (std::size_t x = 0; x < half; ++x)
			v[x] = (1.0 - p) * v[x] + p * v[x + half];
		len = half;
	}
	return v[0];
}

double biased_variance(const BooleanFunction& f, const BiasedMeasure& mu)
{
	std::vector<double> sq(f.size());
	for (std::size_t x = 0; x < sq.size(); ++x)
		sq[x] = f[x] * f[x];
	const double m = biased_expectation(f, mu);
	return biased_expectation(BooleanFunction(f.n(), std::move(sq)), mu) - m * m;
}

double biased_influence(const BooleanFunction& f, const BiasedMeasure& mu, int i)
{
	if (i < 0 || i >= f.n())
		throw std::out_of_range("coordinate outside arity");
	const std::uint64_t bit = std::uint64_t{1} << i;
	const double p = mu[i];
	std::vector<double> h(f.size());
	for (std::uint64_t x = 0; x < f.size(); ++x) {
		const double d = f[x | bit] - f[x & ~bit];
		h[x] = p * (1.0 - p) * d * d;
	}
	return biased_expectation(BooleanFunction(f.n(), std::move(h)), mu);
}

bool is_monotone(const BooleanFunction& f)
{
	for (std::uint64_t x = 0; x < f.size(); ++x)
		for (int i = 0; i < f.n(); ++i) {
			const std::uint64_t bit = std::uint64_t{1} << i;
			if (!(x & bit) && f[x] > f[x | bit])
				return false;
		}
	return true;
}

RussoCheck russo_derivative_check(const BooleanFunction& f)
{
	if (!is_monotone(f))
		throw std::invalid_argument("Russo check needs a monotone function");
	const BooleanFunction g = top_indicator(f);
	const double h = kRussoStep;
	RussoCheck out;
	out.derivative = (biased_expectation(g, BiasedMeasure(f.n(), 0.5 + h)) -
						 biased_expectation(g, BiasedMeasure(f.n(), 0.5 - h))) /
		(2.0 * h);
	for (int i = 0; i < f.n(); ++i)
		out.influence_sum += pivot_probability(g, i);
	out.ok = std::abs(out.derivative - out.influence_sum) <= 1e-6;
	return out;
}

CoalitionTrace greedy_coalition(const BooleanFunction& f, int budget)
{
	if (!is_monotone(f))
		throw std::invalid_argument("greedy coalition needs a monotone function");
	const int n = f.n();
	std::uint64_t fixed = 0;

	auto restricted_stats = [&](std::uint64_t mask, double& mean, double& var) {
		double s = 0.0;
		double s2 = 0.0;
		std::uint64_t count = 0;
		for (std::uint64_t x = 0; x < f.size(); ++x)
			if ((x & mask) == mask) {
				s += f[x];
				s2 += f[x] * f[x];
				++count;
			}
		mean = s / static_cast<double>(count);
		var = s2 / static_cast<double>(count) - mean * mean;
	};

	CoalitionTrace trace;
	double mean = 0.0;
	double var = 0.0;
	restricted_stats(0, mean, var);
	trace.means.push_back(mean);
	for (int step = 0; step < budget && var > 1e-15; ++step) {
		int best = -1;
		double best_inf = -1.0;
		for (int j = 0; j < n; ++j) {
			const std::uint64_t bit = std::uint64_t{1} << j;
			if (fixed & bit)
				continue;
			double s = 0.0;
			std::uint64_t count = 0;
			for (std::uint64_t x = 0; x < f.size(); ++x)
				if ((x & fixed) == fixed && !(x & bit)) {
					const double d = (f[x | bit] - f[x]) / 2.0;
					s += d * d;
					++count;
				}
			const double inf = s / static_cast<double>(count);
			if (inf > best_inf) {
				best_inf = inf;
				best = j;
			}
		}
		if (best < 0)
			break;
		fixed |= std::uint64_t{1} << best;
		double next_mean = 0.0;
		double next_var = 0.0;
		restricted_stats(fixed, next_mean, next_var);
		const double gain = next_mean - mean;
		trace.chosen.push_back(best);
		trace.gains.push_back(gain);
		trace.variances.push_back(var);
		trace.means.push_back(next_mean);
		trace.nondecreasing = trace.nondecreasing && gain >= -1e-15;
		trace.step_bound_ok = trace.step_bound_ok && gain >= var / (4.0 * n) - 1e-12;
		mean = next_mean;
		var = next_var;
	}
	return trace;
}

} // namespace qsc
