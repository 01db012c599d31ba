#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "qsc/rng.hpp"

namespace qsc {

// 0 means "use the default"; the default comes from QSC_THREADS or the
// hardware concurrency.
int default_threads();
void set_default_threads(int threads);

inline int resolve_threads(int threads)
{
	return threads > 0 ? threads : default_threads();
}

// Runs body(i) for i in [0,count). Work items are claimed dynamically but
// each item must write only its own output slot, so results are
// independent of scheduling.
template <class Body>
void parallel_for(std::size_t count, Body&& body, int threads = 0)
{
	const auto workers = static_cast<std::size_t>(
		std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), count));
	if (workers <= 1) {
		for (std::size_t i = 0; i < count; ++i)
			body(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (;;) {
			const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
			if (i >= count)
				return;
			body(i);
		}
	};
	std::vector<std::thread> pool;
	pool.reserve(workers - 1);
	for (std::size_t t = 1; t < workers; ++t)
		pool.emplace_back(worker);
	worker();
	for (auto& th : pool)
		th.join();
}

struct Moments {
	double sum = 0.0;
	double sum_sq = 0.0;
	std::uint64_t count = 0;

	void add(double v) noexcept
	{
		sum += v;
		sum_sq += v * v;
		++count;
	}
	void merge(const Moments& o) noexcept
	{
		sum += o.sum;
		sum_sq += o.sum_sq;
		count += o.count;
	}
	double mean() const noexcept { return count ? sum / static_cast<double>(count) : 0.0; }
	double std_error() const noexcept
	{
		if (count < 2)
			return 0.0;
		const double n = static_cast<double>(count);
		const double m = sum / n;
		const double var = std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
		return std::sqrt(var / n);
	}
};

inline constexpr std::uint64_t kMonteCarloChunk = 1u << 14;

// Seeded Monte Carlo over K statistics. sample(rng, out) fills out[0..K).
// Chunk c (kMonteCarloChunk samples) uses stream(seed, c); chunk results are
// merged in chunk order.
template <std::size_t K, class Sample>
std::array<Moments, K> monte_carlo(std::uint64_t samples, std::uint64_t seed, Sample&& sample, int threads = 0)
{
	const std::uint64_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
	std::vector<std::array<Moments, K>> partial(chunks);
	parallel_for(
		chunks,
		[&](std::size_t c) {
			SplitMix64 rng = stream(seed, c);
			const std::uint64_t begin = c * kMonteCarloChunk;
			const std::uint64_t end = std::min(samples, begin + kMonteCarloChunk);
			std::array<double, K> out{};
			for (std::uint64_t s = begin; s < end; ++s) {
				sample(rng, out);
				for (std::size_t k = 0; k < K; ++k)
					partial[c][k].add(out[k]);
			}
		},
		threads);
	std::array<Moments, K> total{};
	for (const auto& p : partial)
		for (std::size_t k = 0; k < K; ++k)
			total[k].merge(p[k]);
	return total;
}

} // namespace qsc
