#include "qsc/boolean/fourier.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsc {

FourierExpansion::FourierExpansion(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs))
{
	BooleanFunction::check_arity(n);
	if (coeffs_.size() != (std::size_t{1} << n))
		throw std::invalid_argument("coefficient table length is not 2^n");
}

std::vector<double> FourierExpansion::level_weights() const
{
	std::vector<double> w(static_cast<std::size_t>(n_) + 1, 0.0);
	for (std::uint64_t s = 0; s < coeffs_.size(); ++s)
		w[static_cast<std::size_t>(std::popcount(s))] += coeffs_[s] * coeffs_[s];
	return w;
}

double FourierExpansion::total_weight() const
{
	double t = 0.0;
	for (double c : coeffs_)
		t += c * c;
	return t;
}

// With x_i = +1 on a set bit, the pair (lo, hi) = (f(x_i=-1), f(x_i=+1))
// maps to (lo+hi, hi-lo): the coefficients without and with i.
void walsh_hadamard_inplace(std::span<double> v)
{
	const std::size_t len = v.size();
	if (len == 0 || (len & (len - 1)) != 0)
		throw std::invalid_argument("transform length must be a power of two");
	for (std::size_t half = 1; half < len; half <<= 1) {
		for (std::size_t block = 0; block < len; block += 2 * half) {
			for (std::size_t j = block; j < block + half; ++j) {
				const double lo = v[j];
				const double hi = v[j + half];
				v[j] = lo + hi;
				v[j + half] = hi - lo;
			}
		}
	}
}

void inverse_walsh_hadamard_inplace(std::span<double> v)
{
	const std::size_t len = v.size();
	if (len == 0 || (len & (len - 1)) != 0)
		throw std::invalid_argument("transform length must be a power of two");
	for (std::size_t half = 1; half < len; half <<= 1) {
		for (std::size_t block = 0; block < len; block += 2 * half) {
			for (std::size_t j = block; j < block + half; ++j) {
				const double without = v[j];
				const double with = v[j + half];
				v[j] = without - with;
				v[j + half] = without + with;
			}
		}
	}
}

FourierExpansion wht(const BooleanFunction& f)
{
	std::vector<double> c = f.values();
	walsh_hadamard_inplace(c);
	const double scale = std::ldexp(1.0, -f.n());
	for (double& x : c)
		x *= scale;
	return FourierExpansion(f.n(), std::move(c));
}

BooleanFunction inverse_wht(const FourierExpansion& c, Codomain codomain)
{
	std::vector<double> v = c.coeffs();
	inverse_walsh_hadamard_inplace(v);
	return BooleanFunction(c.n(), std::move(v), codomain);
}

} // namespace qsc
