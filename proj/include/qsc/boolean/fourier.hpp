#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsc/boolean/function.hpp"

namespace qsc {

// coeffs[S] = 2^-n sum_x f(x) x_S, S a subset bitmask
class FourierExpansion {
public:
	FourierExpansion() = default;
	FourierExpansion(int n, std::vector<double> coeffs);

	int n() const noexcept { return n_; }
	std::size_t size() const noexcept { return coeffs_.size(); }
	double operator[](std::uint64_t s) const { return coeffs_[s]; }
	const std::vector<double>& coeffs() const noexcept { return coeffs_; }

	// sum of squared coefficients on each level 0..n
	std::vector<double> level_weights() const;
	double total_weight() const;

private:
	int n_ = 0;
	std::vector<double> coeffs_;
};

// Butterfly in place, unnormalized: v[S] <- sum_x v[x] x_S.
void walsh_hadamard_inplace(std::span<double> v);
// Inverse butterfly, unnormalized: v[x] <- sum_S v[S] x_S.
void inverse_walsh_hadamard_inplace(std::span<double> v);

FourierExpansion wht(const BooleanFunction& f);
BooleanFunction inverse_wht(const FourierExpansion& c, Codomain codomain = Codomain::Real);

} // namespace qsc
