#include "qsc/condorcet/arrow.hpp"

#include <cmath>
#include <stdexcept>

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/structure.hpp"
#include "qsc/condorcet/source.hpp"

namespace qsc {

namespace {

BooleanFunction as_pm1(const BooleanFunction& f)
{
	if (f.codomain() == Codomain::ZeroOne)
		return f.to_plus_minus();
	if (f.codomain() != Codomain::PlusMinusOne)
		throw std::invalid_argument("expected a Boolean-valued function");
	return f;
}

double distance_to_dictator(const BooleanFunction& f, int i, int sign)
{
	std::uint64_t d = 0;
	for (std::uint64_t x = 0; x < f.size(); ++x)
		if (f[x] != sign * sign_of(x, i))
			++d;
	return static_cast<double>(d) / static_cast<double>(f.size());
}

double distance_to_constant(const BooleanFunction& f, int c)
{
	std::uint64_t d = 0;
	for (std::uint64_t x = 0; x < f.size(); ++x)
		if (f[x] != c)
			++d;
	return static_cast<double>(d) / static_cast<double>(f.size());
}

double measure(const BooleanFunction& b)
{
	double s = 0.0;
	for (std::uint64_t x = 0; x < b.size(); ++x)
		s += b[x];
	return s / static_cast<double>(b.size());
}

} // namespace

std::string to_string(ArrowVerdict v)
{
	switch (v) {
	case ArrowVerdict::DictatorTriple:
		return "dictator_triple";
	case ArrowVerdict::OppositeConstantsPair:
		return "opposite_constants_pair";
	case ArrowVerdict::Paradoxical:
		return "paradoxical";
	}
	return "unknown";
}

ArrowClassification classify_arrow(const BooleanFunction& f0, const BooleanFunction& g0, const BooleanFunction& h0)
{
	const std::array<BooleanFunction, 3> fs = {as_pm1(f0), as_pm1(g0), as_pm1(h0)};
	ArrowClassification c;
	c.paradox_probability = paradox_probability_exact(fs[0], fs[1], fs[2]);
	const bool exact = fs[0].n() <= 8;
	const bool zero = exact ? c.paradox_probability == 0.0 : std::abs(c.paradox_probability) <= 1e-12;

	double best = INFINITY;
	for (int i = 0; i < fs[0].n(); ++i)
		for (int s : {1, -1}) {
			std::array<double, 3> d{};
			double total = 0.0;
			for (std::size_t k = 0; k < 3; ++k) {
				d[k] = distance_to_dictator(fs[k], i, s);
				total += d[k];
			}
			if (total < best) {
				best = total;
				c.dictator = i;
				c.sign = s;
				c.dictator_distances = d;
			}
		}
	const std::array<std::array<int, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
	double best_pair = INFINITY;
	for (int p = 0; p < 3; ++p)
		for (int s : {1, -1}) {
			const auto& pr = pairs[static_cast<std::size_t>(p)];
			const double d0 = distance_to_constant(fs[static_cast<std::size_t>(pr[0])], s);
			const double d1 = distance_to_constant(fs[static_cast<std::size_t>(pr[1])], -s);
			if (d0 + d1 < best_pair) {
				best_pair = d0 + d1;
				c.pair = p;
				c.pair_values = {s, -s};
				c.pair_distances = {d0, d1};
			}
		}
	if (!zero) {
		c.verdict = ArrowVerdict::Paradoxical;
	} else if (best == 0.0) {
		c.verdict = ArrowVerdict::DictatorTriple;
	} else if (best_pair == 0.0) {
		c.verdict = ArrowVerdict::OppositeConstantsPair;
	} else {
		throw std::logic_error("paradox-free triple without an Arrow certificate");
	}
	return c;
}

BalancedArrowReport balanced_arrow_check(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h,
	double constant)
{
	const std::array<BooleanFunction, 3> fs = {as_pm1(f), as_pm1(g), as_pm1(h)};
	BalancedArrowReport r;
	r.epsilon = paradox_probability_exact(fs[0], fs[1], fs[2]);
	r.balanced = true;
	for (std::size_t k = 0; k < 3; ++k) {
		r.balanced = r.balanced && std::abs(fs[k].mean()) <= 1e-9;
		const FknReport fkn = fkn_analysis(fs[k]);
		r.dictators[k] = fkn.dictator;
		r.signs[k] = fkn.sign;
		r.distances[k] = fkn.distance;
	}
	r.common_dictator = r.dictators[0] == r.dictators[1] && r.dictators[1] == r.dictators[2] &&
		r.signs[0] == r.signs[1] && r.signs[1] == r.signs[2];
	r.applicable = r.balanced && r.epsilon < 1.0 / 36.0;
	if (r.applicable) {
		r.ok = r.common_dictator;
		for (double d : r.distances)
			r.ok = r.ok && d <= constant * r.epsilon + 1e-12;
	}
	return r;
}

SetCorrelationBound boolean_reverse_hyp_check(const BooleanFunction& b1, const BooleanFunction& b2, double rho)
{
	if (b1.n() != b2.n())
		throw std::invalid_argument("sets live in cubes of different dimension");
	if (b1.n() > 14)
		throw std::invalid_argument("exact joint evaluation limited to n <= 14");
	if (!(rho > -1.0 && rho < 1.0))
		throw std::domain_error("rho must lie in (-1,1)");
	const BooleanFunction i1 = as_pm1(b1).to_zero_one();
	const BooleanFunction i2 = as_pm1(b2).to_zero_one();
	const BooleanFunction t2 = noise_operator_direct(i2, rho);
	SetCorrelationBound r;
	for (std::uint64_t x = 0; x < i1.size(); ++x)
		r.p_joint += i1[x] * t2[x];
	r.p_joint /= static_cast<double>(i1.size());
	r.p1 = measure(i1);
	r.p2 = measure(i2);
	if (r.p1 > 0.0 && r.p2 > 0.0) {
		const double a = std::sqrt(-std::log(r.p1));
		const double b = std::sqrt(-std::log(r.p2));
		const double ar = std::abs(rho);
		r.bound = std::exp(-(a * a + b * b + 2.0 * ar * a * b) / (1.0 - rho * rho));
		r.eps_bound = std::pow(std::min(r.p1, r.p2), 2.0 / (1.0 - ar));
	}
	r.ok = r.p_joint >= r.bound - 1e-12 && r.p_joint >= r.eps_bound - 1e-12;
	return r;
}

TwoInfluentialBound two_influential_paradox_bound(const BooleanFunction& f, const BooleanFunction& g,
	const BooleanFunction& h, int i, int j, double eps)
{
	if (f.n() > 8)
		throw std::invalid_argument("exact evaluation limited to n <= 8");
	if (i == j)
		throw std::invalid_argument("the two influential voters must differ");
	TwoInfluentialBound r;
	r.influence_f = influence(as_pm1(f), i);
	r.influence_g = influence(as_pm1(g), j);
	if (!(r.influence_f > eps && r.influence_g > eps))
		throw std::invalid_argument("influence hypotheses fail");
	r.paradox_probability = paradox_probability_exhaustive(f, g, h, 1);
	r.bound = eps * eps * eps / 36.0;
	r.ok = r.paradox_probability >= r.bound - 1e-12;
	return r;
}

} // namespace qsc
