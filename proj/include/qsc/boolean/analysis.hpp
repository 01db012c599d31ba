#pragma once

#include <cstdint>
#include <vector>

#include "qsc/boolean/fourier.hpp"
#include "qsc/boolean/function.hpp"

namespace qsc {

// I_i(f) = E[Var[f | x_{-i}]], coordinate i is 0-based
double influence(const BooleanFunction& f, int i);
std::vector<double> influences(const BooleanFunction& f);
double total_influence(const BooleanFunction& f);

// sum_{S contains i} fhat(S)^2
double influence_fourier(const FourierExpansion& c, int i);
std::vector<double> influences_fourier(const FourierExpansion& c);

// P[f(x) != f(x with coordinate i flipped)]
double pivot_probability(const BooleanFunction& f, int i);

// T_rho f through the Fourier multiplier rho^|S|
BooleanFunction noise_operator(const BooleanFunction& f, double rho);
// T_rho f by applying the per-coordinate 2x2 transition directly
BooleanFunction noise_operator_direct(const BooleanFunction& f, double rho);

// sum_S rho^|S| fhat(S) ghat(S)
double noisy_inner_product(const BooleanFunction& f, const BooleanFunction& g, double rho);
double noisy_inner_product(const FourierExpansion& f, const FourierExpansion& g, double rho);
inline double stability(const BooleanFunction& f, double rho) { return noisy_inner_product(f, f, rho); }

// Draws (x, y) with x uniform and E[x_i y_i] = rho independently per
// coordinate; the primitive behind every noisy expectation.
class CorrelatedPairLaw {
public:
	CorrelatedPairLaw(int n, double rho);
	int n() const noexcept { return n_; }
	double rho() const noexcept { return rho_; }
	// P[y_i = x_i]
	double agree_probability() const noexcept { return (1.0 + rho_) / 2.0; }

	template <class Rng>
	std::pair<std::uint64_t, std::uint64_t> sample(Rng& rng) const
	{
		const std::uint64_t x = n_ == 64 ? rng() : (rng() & ((std::uint64_t{1} << n_) - 1));
		std::uint64_t flip = 0;
		const double keep = agree_probability();
		for (int i = 0; i < n_; ++i)
			if (rng.uniform() >= keep)
				flip |= std::uint64_t{1} << i;
		return {x, x ^ flip};
	}

	// P[y | x]
	double transition(std::uint64_t x, std::uint64_t y) const;

private:
	int n_;
	double rho_;
};

// E[f(x) g(y)] estimated with the pair sampler
struct Estimate {
	double value = 0.0;
	double std_error = 0.0;
};
Estimate noisy_inner_product_mc(const BooleanFunction& f, const BooleanFunction& g, double rho, std::uint64_t samples,
	std::uint64_t seed, int threads = 0);

} // namespace qsc
