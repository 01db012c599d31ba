#include "qsc/condorcet/source.hpp"

#include <stdexcept>
#include <vector>

#include "qsc/parallel.hpp"

namespace qsc {

namespace {

BooleanFunction as_pm1(const BooleanFunction& f)
{
	switch (f.codomain()) {
	case Codomain::PlusMinusOne:
		return f;
	case Codomain::ZeroOne:
		return f.to_plus_minus();
	case Codomain::Real:
		break;
	}
	throw std::invalid_argument("paradox probability needs Boolean-valued functions");
}

void check_triple(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h)
{
	if (f.n() != g.n() || f.n() != h.n())
		throw std::invalid_argument("paradox probability needs equal arities");
}

std::vector<std::uint8_t> bits(const BooleanFunction& f)
{
	std::vector<std::uint8_t> b(f.size());
	for (std::size_t x = 0; x < b.size(); ++x)
		b[x] = f[x] > 0 ? 1 : 0;
	return b;
}

std::uint64_t pow6(int n)
{
	std::uint64_t v = 1;
	for (int i = 0; i < n; ++i)
		v *= 6;
	return v;
}

} // namespace

ParadoxMode paradox_mode_from_string(const std::string& s)
{
	if (s == "fourier")
		return ParadoxMode::Fourier;
	if (s == "exhaustive")
		return ParadoxMode::Exhaustive;
	if (s == "mc")
		return ParadoxMode::MonteCarlo;
	throw std::invalid_argument("unknown paradox mode '" + s + "'");
}

double paradox_probability_fourier(const BooleanFunction& f0, const BooleanFunction& g0, const BooleanFunction& h0)
{
	check_triple(f0, g0, h0);
	const FourierExpansion f = wht(as_pm1(f0));
	const FourierExpansion g = wht(as_pm1(g0));
	const FourierExpansion h = wht(as_pm1(h0));
	return (1.0 + noisy_inner_product(f, g, kCondorcetRho) + noisy_inner_product(f, h, kCondorcetRho) +
			   noisy_inner_product(g, h, kCondorcetRho)) /
		4.0;
}

double paradox_probability_exhaustive(const BooleanFunction& f0, const BooleanFunction& g0, const BooleanFunction& h0,
	int threads)
{
	check_triple(f0, g0, h0);
	const int n = f0.n();
	if (n < 1 || n > kMaxExhaustiveVoters)
		throw std::invalid_argument("exhaustive paradox enumeration needs 1 <= n <= 11");
	const auto F = bits(as_pm1(f0));
	const auto G = bits(as_pm1(g0));
	const auto H = bits(as_pm1(h0));
	std::array<std::uint64_t, 6> xb{};
	std::array<std::uint64_t, 6> yb{};
	std::array<std::uint64_t, 6> zb{};
	for (int a = 0; a < 6; ++a) {
		xb[static_cast<std::size_t>(a)] = CondorcetAtoms::x[static_cast<std::size_t>(a)] > 0;
		yb[static_cast<std::size_t>(a)] = CondorcetAtoms::y[static_cast<std::size_t>(a)] > 0;
		zb[static_cast<std::size_t>(a)] = CondorcetAtoms::z[static_cast<std::size_t>(a)] > 0;
	}
	// voters [0, head) fix the chunk; voter n-1 is the unrolled inner loop
	const int head = std::min(n - 1, 3);
	const std::uint64_t chunks = pow6(head);
	std::vector<std::uint64_t> counts(chunks, 0);
	parallel_for(
		chunks,
		[&](std::size_t c) {
			std::uint64_t X = 0;
			std::uint64_t Y = 0;
			std::uint64_t Z = 0;
			std::uint64_t rest = c;
			for (int v = 0; v < head; ++v) {
				const auto a = static_cast<std::size_t>(rest % 6);
				rest /= 6;
				X |= xb[a] << v;
				Y |= yb[a] << v;
				Z |= zb[a] << v;
			}
			const int last = n - 1;
			std::vector<int> digit(static_cast<std::size_t>(n), 0);
			for (int v = head; v < last; ++v) {
				X |= xb[0] << v;
				Y |= yb[0] << v;
				Z |= zb[0] << v;
			}
			std::uint64_t count = 0;
			for (;;) {
				for (std::size_t a = 0; a < 6; ++a) {
					const std::uint8_t fv = F[X | xb[a] << last];
					if (fv == G[Y | yb[a] << last] && fv == H[Z | zb[a] << last])
						++count;
				}
				int v = head;
				for (; v < last; ++v) {
					auto& d = digit[static_cast<std::size_t>(v)];
					const auto from = static_cast<std::size_t>(d);
					d = d == 5 ? 0 : d + 1;
					const auto to = static_cast<std::size_t>(d);
					X ^= (xb[from] ^ xb[to]) << v;
					Y ^= (yb[from] ^ yb[to]) << v;
					Z ^= (zb[from] ^ zb[to]) << v;
					if (d != 0)
						break;
				}
				if (v == last)
					break;
			}
			counts[c] = count;
		},
		threads);
	std::uint64_t total = 0;
	for (auto c : counts)
		total += c;
	return static_cast<double>(total) / static_cast<double>(pow6(n));
}

Estimate paradox_probability_mc(const BooleanFunction& f0, const BooleanFunction& g0, const BooleanFunction& h0,
	std::uint64_t samples, std::uint64_t seed, int threads)
{
	check_triple(f0, g0, h0);
	const BooleanFunction f = as_pm1(f0);
	const BooleanFunction g = as_pm1(g0);
	const BooleanFunction h = as_pm1(h0);
	const int n = f.n();
	const auto m = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			std::uint64_t X = 0;
			std::uint64_t Y = 0;
			std::uint64_t Z = 0;
			for (int v = 0; v < n; ++v) {
				const auto a = static_cast<std::size_t>(rng.below(6));
				X |= static_cast<std::uint64_t>(CondorcetAtoms::x[a] > 0) << v;
				Y |= static_cast<std::uint64_t>(CondorcetAtoms::y[a] > 0) << v;
				Z |= static_cast<std::uint64_t>(CondorcetAtoms::z[a] > 0) << v;
			}
			out[0] = f[X] == g[Y] && f[X] == h[Z] ? 1.0 : 0.0;
		},
		threads);
	return {m[0].mean(), m[0].std_error()};
}

int majority_vote(std::span<const std::int8_t> votes)
{
	int s = 0;
	for (auto v : votes)
		s += v;
	if (s == 0)
		throw std::invalid_argument("majority vote tied; use an odd electorate");
	return s > 0 ? 1 : -1;
}

Estimate paradox_probability_mc(int n, const VoteRule& f, const VoteRule& g, const VoteRule& h, std::uint64_t samples,
	std::uint64_t seed, int threads)
{
	if (n < 1)
		throw std::invalid_argument("need at least one voter");
	const auto m = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			thread_local std::vector<std::int8_t> x;
			thread_local std::vector<std::int8_t> y;
			thread_local std::vector<std::int8_t> z;
			x.resize(static_cast<std::size_t>(n));
			y.resize(static_cast<std::size_t>(n));
			z.resize(static_cast<std::size_t>(n));
			for (std::size_t v = 0; v < x.size(); ++v) {
				const auto a = static_cast<std::size_t>(rng.below(6));
				x[v] = static_cast<std::int8_t>(CondorcetAtoms::x[a]);
				y[v] = static_cast<std::int8_t>(CondorcetAtoms::y[a]);
				z[v] = static_cast<std::int8_t>(CondorcetAtoms::z[a]);
			}
			const int a = f(x);
			out[0] = a == g(y) && a == h(z) ? 1.0 : 0.0;
		},
		threads);
	return {m[0].mean(), m[0].std_error()};
}

double paradox_probability(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h, ParadoxMode mode,
	std::uint64_t samples, std::uint64_t seed, int threads)
{
	switch (mode) {
	case ParadoxMode::Fourier:
		return paradox_probability_fourier(f, g, h);
	case ParadoxMode::Exhaustive:
		return paradox_probability_exhaustive(f, g, h, threads);
	case ParadoxMode::MonteCarlo:
		return paradox_probability_mc(f, g, h, samples, seed, threads).value;
	}
	return 0.0;
}

double paradox_probability_exact(const BooleanFunction& f, const BooleanFunction& g, const BooleanFunction& h)
{
	if (f.n() <= 8)
		return paradox_probability_exhaustive(f, g, h, 1);
	return paradox_probability_fourier(f, g, h);
}

} // namespace qsc
