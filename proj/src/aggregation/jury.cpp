#include "qsc/aggregation/jury.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/generators.hpp"

namespace qsc {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// cpp_int reads a leading 0 as an octal prefix
cpp_int parse_decimal(std::string s)
{
	if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
		throw std::invalid_argument("malformed probability '" + s + "'");
	const auto nz = s.find_first_not_of('0');
	return cpp_int(nz == std::string::npos ? std::string("0") : s.substr(nz));
}

cpp_rational parse_rational(std::string_view text)
{
	const std::string s(text);
	if (const auto slash = s.find('/'); slash != std::string::npos)
	{
		const cpp_int den = parse_decimal(s.substr(slash + 1));
		if (den == 0)
			throw std::invalid_argument("zero denominator");
		return cpp_rational(parse_decimal(s.substr(0, slash)), den);
	}
	const auto dot = s.find('.');
	if (dot == std::string::npos)
		return cpp_rational(parse_decimal(s));
	const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
	cpp_int den = 1;
	for (std::size_t i = dot + 1; i < s.size(); ++i)
		den *= 10;
	return cpp_rational(parse_decimal(digits.empty() ? "0" : digits), den);
}

cpp_rational binomial_upper_tail(int n, const cpp_rational& p)
{
	// sum over j > n/2 of C(n,j) p^j (1-p)^(n-j)
	const cpp_rational q = 1 - p;
	cpp_rational total = 0;
	cpp_int c = 1;
	std::vector<cpp_rational> pp(static_cast<std::size_t>(n) + 1, 1), qq(static_cast<std::size_t>(n) + 1, 1);
	for (int j = 1; j <= n; ++j) {
		pp[static_cast<std::size_t>(j)] = pp[static_cast<std::size_t>(j - 1)] * p;
		qq[static_cast<std::size_t>(j)] = qq[static_cast<std::size_t>(j - 1)] * q;
	}
	for (int j = 0; j <= n; ++j) {
		if (2 * j > n)
			total += cpp_rational(c) * pp[static_cast<std::size_t>(j)] * qq[static_cast<std::size_t>(n - j)];
		c = c * (n - j) / (j + 1);
	}
	return total;
}

} // namespace

JuryCurve jury_curve(std::string_view p, const std::vector<int>& ns)
{
	const cpp_rational pr = parse_rational(p);
	if (pr < 0 || pr > 1)
		throw std::invalid_argument("p must lie in [0, 1]");
	JuryCurve c;
	c.p = std::string(p);
	cpp_rational prev = -1;
	for (int n : ns) {
		if (n < 1)
			throw std::invalid_argument("n must be positive");
		const cpp_rational v = binomial_upper_tail(n, pr);
		c.points.push_back({n, static_cast<double>(v), v.str()});
		if (!(v > prev))
			c.strictly_increasing = false;
		prev = v;
	}
	return c;
}

NeymanPearsonReport neyman_pearson_exhaustive(int n, double p)
{
	if (n < 1 || n > 4)
		throw std::invalid_argument("exhaustive Neyman-Pearson search needs 1 <= n <= 4");
	const std::size_t size = std::size_t{1} << n;
	// gain of answering + at x: P(x, s=+) - P(x, s=-)
	std::vector<double> gain(size);
	double base = 0.0;
	for (std::size_t x = 0; x < size; ++x) {
		const int plus = std::popcount(x);
		const double given_plus = std::pow(p, plus) * std::pow(1.0 - p, n - plus);
		const double given_minus = std::pow(1.0 - p, plus) * std::pow(p, n - plus);
		gain[x] = 0.5 * (given_plus - given_minus);
		base += 0.5 * given_minus;
	}
	NeymanPearsonReport r;
	r.n = n;
	r.p = p;
	r.functions = std::uint64_t{1} << size;
	std::vector<double> value(r.functions);
	r.best = -1.0;
	for (std::uint64_t t = 0; t < r.functions; ++t) {
		double v = base;
		for (std::size_t x = 0; x < size; ++x)
			if ((t >> x) & 1u)
				v += gain[x];
		value[t] = v;
		r.best = std::max(r.best, v);
	}
	std::uint64_t maj = 0;
	for (std::size_t x = 0; x < size; ++x)
		if (2 * std::popcount(x) > n)
			maj |= std::uint64_t{1} << x;
	r.majority_value = value[maj];
	for (std::uint64_t t = 0; t < r.functions; ++t) {
		if (value[t] < r.best - 1e-12)
			continue;
		r.maximizers.push_back(t);
		for (std::size_t x = 0; x < size; ++x) {
			const int margin = 2 * std::popcount(x) - n;
			const bool plus = (t >> x) & 1u;
			if ((margin > 0 && !plus) || (margin < 0 && plus))
				r.sign_rule = false;
		}
	}
	r.majority_unique = n % 2 == 1 && r.maximizers.size() == 1 && r.maximizers[0] == maj;
	return r;
}

KklDiagnostic kkl_diagnostic(const std::vector<double>& infl, double variance)
{
	KklDiagnostic d;
	d.n = static_cast<int>(infl.size());
	d.min_influence = infl.empty() ? 0.0 : *std::min_element(infl.begin(), infl.end());
	d.variance = variance;
	const double denom = variance * std::log(static_cast<double>(d.n));
	d.ratio = denom > 0.0 ? d.min_influence * d.n / denom : 0.0;
	return d;
}

KklDiagnostic kkl_diagnostic(const BooleanFunction& f)
{
	const BooleanFunction g = f.codomain() == Codomain::ZeroOne ? f.to_plus_minus() : f;
	return kkl_diagnostic(influences(g), g.variance());
}

TribesCheck tribes_check(int r)
{
	if (r < 1 || r > 5)
		throw std::invalid_argument("tribes check covers 1 <= r <= 5");
	TribesCheck c;
	c.r = r;
	c.m = 1 << r;
	c.closed_form = tribes_influence_closed_form(r, c.m);
	std::vector<double> infl;
	double variance = 0.0;
	if (static_cast<long long>(r) * c.m <= kMaxDenseArity) {
		const BooleanFunction t = tribes(r, c.m);
		infl = influences(t);
		variance = t.variance();
	} else {
		infl = composed_pivot_probabilities(or_function(c.m), and_function(r));
		// P[tribes = -1] = (1 - 2^-r)^m
		const double q = std::pow(1.0 - std::ldexp(1.0, -r), c.m);
		variance = 4.0 * q * (1.0 - q);
	}
	c.min_influence = *std::min_element(infl.begin(), infl.end());
	c.max_influence = *std::max_element(infl.begin(), infl.end());
	for (double v : infl)
		c.max_abs_error = std::max(c.max_abs_error, std::abs(v - c.closed_form));
	c.matches = c.max_abs_error <= 1e-12 * c.closed_form;
	c.kkl = kkl_diagnostic(infl, variance);
	return c;
}

} // namespace qsc
