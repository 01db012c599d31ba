#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace qsc {

__extension__ typedef unsigned __int128 uint128_t;

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
	z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
	z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
	return z ^ (z >> 31);
}

class SplitMix64 {
public:
	using result_type = std::uint64_t;

	explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

	static constexpr result_type min() noexcept { return 0; }
	static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

	result_type operator()() noexcept
	{
		state_ += UINT64_C(0x9E3779B97F4A7C15);
		return mix64(state_);
	}

	// 53-bit uniform in [0,1)
	double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

	// uniform in [0,bound); multiply-high, bias below 2^-64 * bound
	std::uint64_t below(std::uint64_t bound) noexcept
	{
		return static_cast<std::uint64_t>((static_cast<uint128_t>((*this)()) * bound) >> 64);
	}

	bool bernoulli(double p) noexcept { return uniform() < p; }

	// Box-Muller, second variate cached
	double normal() noexcept
	{
		if (has_spare_) {
			has_spare_ = false;
			return spare_;
		}
		double u1 = 0.0;
		do {
			u1 = uniform();
		} while (u1 <= 0.0);
		const double u2 = uniform();
		const double radius = std::sqrt(-2.0 * std::log(u1));
		const double angle = 2.0 * std::numbers::pi * u2;
		spare_ = radius * std::sin(angle);
		has_spare_ = true;
		return radius * std::cos(angle);
	}

private:
	std::uint64_t state_;
	double spare_ = 0.0;
	bool has_spare_ = false;
};

// Substream `index` of `seed`. Monte-Carlo work is cut into fixed-size
// chunks and chunk c always draws from stream(seed, c), so the result does
// not depend on how chunks are spread over threads.
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept
{
	return SplitMix64(mix64(seed ^ mix64(index + UINT64_C(0x632BE59BD9B4E019))));
}

} // namespace qsc
