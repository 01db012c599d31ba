#include "qsc/boolean/generators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qsc/boolean/analysis.hpp"
#include "qsc/boolean/biased.hpp"
#include "qsc/rng.hpp"
#include "qsc/spec_string.hpp"

namespace qsc {

namespace {

void require(bool cond, const char* what)
{
	if (!cond)
		throw std::invalid_argument(what);
}

int ipow(int base, int e)
{
	long long v = 1;
	for (int i = 0; i < e; ++i) {
		v *= base;
		if (v > kMaxDenseArity)
			throw std::invalid_argument("arity exceeds the dense limit");
	}
	return static_cast<int>(v);
}

// sign of the sum of the bits of x over the block [lo, lo+len), len odd
int block_majority(std::uint64_t x, int lo, int len)
{
	const std::uint64_t mask = ((std::uint64_t{1} << len) - 1) << lo;
	return 2 * std::popcount(x & mask) > len ? 1 : -1;
}

} // namespace

BooleanFunction dictator(int n, int i, int sign)
{
	require(i >= 0 && i < n, "dictator coordinate outside arity");
	require(sign == 1 || sign == -1, "dictator sign must be +1 or -1");
	return BooleanFunction::tabulate(n, [&](std::uint64_t x) { return sign * sign_of(x, i); }, Codomain::PlusMinusOne);
}

BooleanFunction majority(int n)
{
	require(n >= 1 && n % 2 == 1, "majority needs odd n");
	return BooleanFunction::tabulate(n, [&](std::uint64_t x) { return block_majority(x, 0, n); }, Codomain::PlusMinusOne);
}

BooleanFunction parity(int n)
{
	require(n >= 1, "parity needs n >= 1");
	// product of x_i is -1 iff the number of -1 coordinates is odd
	return BooleanFunction::tabulate(
		n, [&](std::uint64_t x) { return (n - std::popcount(x)) % 2 ? -1 : 1; }, Codomain::PlusMinusOne);
}

BooleanFunction tribes(int r, int m)
{
	require(r >= 1 && m >= 1, "tribes needs r, m >= 1");
	require(static_cast<long long>(r) * m <= kMaxDenseArity, "arity exceeds the dense limit");
	const std::uint64_t block = (std::uint64_t{1} << r) - 1;
	return BooleanFunction::tabulate(
		r * m,
		[&](std::uint64_t x) {
			for (int j = 0; j < m; ++j)
				if (((x >> (j * r)) & block) == block)
					return 1;
			return -1;
		},
		Codomain::PlusMinusOne);
}

BooleanFunction electoral_college(int r)
{
	require(r >= 1 && r % 2 == 1, "electoral college needs odd r");
	const int n = ipow(r, 2);
	return BooleanFunction::tabulate(
		n,
		[&](std::uint64_t x) {
			int votes = 0;
			for (int j = 0; j < r; ++j)
				votes += block_majority(x, j * r, r);
			return votes > 0 ? 1 : -1;
		},
		Codomain::PlusMinusOne);
}

BooleanFunction recursive_majority(int r, int h)
{
	require(r >= 1 && r % 2 == 1, "recursive majority needs odd r");
	require(h >= 1, "recursive majority needs h >= 1");
	const int n = ipow(r, h);
	return BooleanFunction::tabulate(
		n,
		[&](std::uint64_t x) {
			// collapse one level at a time; level values packed as bits
			std::uint64_t level = x;
			int width = n;
			while (width > 1) {
				std::uint64_t next = 0;
				for (int j = 0; j < width / r; ++j)
					if (block_majority(level, j * r, r) > 0)
						next |= std::uint64_t{1} << j;
				level = next;
				width /= r;
			}
			return (level & 1u) ? 1 : -1;
		},
		Codomain::PlusMinusOne);
}

BooleanFunction and_function(int n)
{
	const std::uint64_t all = (std::uint64_t{1} << n) - 1;
	return BooleanFunction::tabulate(n, [&](std::uint64_t x) { return x == all ? 1 : -1; }, Codomain::PlusMinusOne);
}

BooleanFunction or_function(int n)
{
	return BooleanFunction::tabulate(n, [&](std::uint64_t x) { return x ? 1 : -1; }, Codomain::PlusMinusOne);
}

BooleanFunction constant_function(int n, int value)
{
	require(value == 1 || value == -1, "constant must be +1 or -1");
	return BooleanFunction::tabulate(n, [&](std::uint64_t) { return value; }, Codomain::PlusMinusOne);
}

BooleanFunction dictator_times_majority(int n)
{
	require(n >= 2, "x1 * majority needs n >= 2");
	return BooleanFunction::tabulate(
		n,
		[&](std::uint64_t x) {
			const int s = 2 * std::popcount(x >> 1) - (n - 1);
			const int m = s > 0 ? 1 : (s < 0 ? -1 : sign_of(x, 1));
			return sign_of(x, 0) * m;
		},
		Codomain::PlusMinusOne);
}

BooleanFunction random_function(int n, std::uint64_t seed)
{
	SplitMix64 rng = stream(seed, 0);
	return BooleanFunction::tabulate(n, [&](std::uint64_t) { return (rng() >> 63) ? 1 : -1; }, Codomain::PlusMinusOne);
}

BooleanFunction random_balanced_function(int n, std::uint64_t seed)
{
	BooleanFunction::check_arity(n);
	require(n >= 1, "balanced function needs n >= 1");
	const std::size_t size = std::size_t{1} << n;
	std::vector<double> v(size, -1.0);
	std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(size / 2), 1.0);
	SplitMix64 rng = stream(seed, 0);
	for (std::size_t i = size - 1; i > 0; --i)
		std::swap(v[i], v[rng.below(i + 1)]);
	return BooleanFunction(n, std::move(v), Codomain::PlusMinusOne);
}

BooleanFunction make_function(std::string_view spec)
{
	const SpecString s = SpecString::parse(spec);
	auto n = [&] { return static_cast<int>(s.get_int("n")); };
	if (s.name == "dictator") {
		s.expect_only({"n", "i", "sign"});
		return dictator(n(), static_cast<int>(s.get_int("i", 1)) - 1, static_cast<int>(s.get_int("sign", 1)));
	}
	if (s.name == "majority" || s.name == "maj") {
		s.expect_only({"n"});
		return majority(n());
	}
	if (s.name == "parity") {
		s.expect_only({"n"});
		return parity(n());
	}
	if (s.name == "tribes") {
		s.expect_only({"r", "m"});
		return tribes(static_cast<int>(s.get_int("r")), static_cast<int>(s.get_int("m")));
	}
	if (s.name == "electoral_college") {
		s.expect_only({"r"});
		return electoral_college(static_cast<int>(s.get_int("r")));
	}
	if (s.name == "recursive_majority") {
		s.expect_only({"r", "h"});
		return recursive_majority(static_cast<int>(s.get_int("r", 3)), static_cast<int>(s.get_int("h")));
	}
	if (s.name == "and") {
		s.expect_only({"n"});
		return and_function(n());
	}
	if (s.name == "or") {
		s.expect_only({"n"});
		return or_function(n());
	}
	if (s.name == "constant") {
		s.expect_only({"n", "c"});
		return constant_function(n(), static_cast<int>(s.get_int("c", 1)));
	}
	if (s.name == "x1_times_majority") {
		s.expect_only({"n"});
		return dictator_times_majority(n());
	}
	if (s.name == "random") {
		s.expect_only({"n", "seed", "balanced"});
		const auto seed = static_cast<std::uint64_t>(s.get_int("seed", 1));
		return s.get_int("balanced", 0) ? random_balanced_function(n(), seed) : random_function(n(), seed);
	}
	throw std::invalid_argument("unknown function generator '" + s.name + "'");
}

std::vector<std::string> function_zoo(int max_n)
{
	std::vector<std::string> out;
	for (int n = 1; n <= max_n; ++n) {
		out.push_back("dictator:n=" + std::to_string(n) + ",i=1");
		if (n % 2 == 1)
			out.push_back("majority:n=" + std::to_string(n));
		out.push_back("parity:n=" + std::to_string(n));
		if (n >= 2) {
			out.push_back("and:n=" + std::to_string(n));
			out.push_back("or:n=" + std::to_string(n));
			out.push_back("x1_times_majority:n=" + std::to_string(n));
		}
	}
	for (int r = 1; r <= 4; ++r)
		for (int m = 2; r * m <= max_n; m *= 2)
			out.push_back("tribes:r=" + std::to_string(r) + ",m=" + std::to_string(m));
	for (int r = 3; r * r <= max_n; r += 2)
		out.push_back("electoral_college:r=" + std::to_string(r));
	for (int h = 1, n = 3; n <= max_n; ++h, n *= 3)
		out.push_back("recursive_majority:r=3,h=" + std::to_string(h));
	return out;
}

std::vector<double> composed_pivot_probabilities(const BooleanFunction& outer, const BooleanFunction& inner)
{
	const int m = outer.n();
	const int r = inner.n();
	const BooleanFunction in = inner.codomain() == Codomain::ZeroOne ? inner.to_plus_minus() : inner;
	const BooleanFunction out = outer.codomain() == Codomain::ZeroOne ? outer.to_plus_minus() : outer;
	double p_plus = 0.0;
	for (std::uint64_t x = 0; x < in.size(); ++x)
		if (in[x] > 0)
			p_plus += 1.0;
	p_plus /= static_cast<double>(in.size());

	std::vector<double> block_pivot(static_cast<std::size_t>(m), 1.0);
	if (p_plus <= 0.0 || p_plus >= 1.0) {
		// constant blocks never pass a flip upward
		std::fill(block_pivot.begin(), block_pivot.end(), 0.0);
	} else {
		const BiasedMeasure mu(m, p_plus);
		for (int j = 0; j < m; ++j) {
			const std::uint64_t bit = std::uint64_t{1} << j;
			std::vector<double> piv(out.size());
			for (std::uint64_t y = 0; y < out.size(); ++y)
				piv[y] = out[y] != out[y ^ bit] ? 1.0 : 0.0;
			block_pivot[static_cast<std::size_t>(j)] = biased_expectation(BooleanFunction(m, std::move(piv)), mu);
		}
	}
	std::vector<double> res;
	res.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(r));
	for (int j = 0; j < m; ++j)
		for (int i = 0; i < r; ++i)
			res.push_back(pivot_probability(in, i) * block_pivot[static_cast<std::size_t>(j)]);
	return res;
}

double tribes_influence_closed_form(int r, int m)
{
	return std::ldexp(1.0, 1 - r) * std::pow(1.0 - std::ldexp(1.0, -r), m - 1);
}

} // namespace qsc
