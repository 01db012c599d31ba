#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsc {

// Input convention, fixed everywhere: bit i of the table index is
// coordinate i+1, and a set bit means x_{i+1} = +1 (or 1 in the 0/1 view).
inline constexpr int kMaxDenseArity = 24;

enum class Codomain { PlusMinusOne, ZeroOne, Real };

std::string to_string(Codomain c);
Codomain codomain_from_string(std::string_view s);

class BooleanFunction {
public:
	BooleanFunction() = default;
	BooleanFunction(int n, std::vector<double> values, Codomain codomain = Codomain::Real);

	template <class F>
	static BooleanFunction tabulate(int n, F&& f, Codomain codomain)
	{
		check_arity(n);
		std::vector<double> v(std::size_t{1} << n);
		for (std::uint64_t x = 0; x < v.size(); ++x)
			v[x] = static_cast<double>(f(x));
		return BooleanFunction(n, std::move(v), codomain);
	}

	int n() const noexcept { return n_; }
	std::size_t size() const noexcept { return values_.size(); }
	Codomain codomain() const noexcept { return codomain_; }
	double operator[](std::uint64_t x) const { return values_[x]; }
	const std::vector<double>& values() const noexcept { return values_; }

	double mean() const;
	double variance() const;
	bool is_constant() const;

	// +1 <-> 1 and -1 <-> 0. Both directions are exact.
	BooleanFunction to_plus_minus() const;
	BooleanFunction to_zero_one() const;
	// drops the codomain tag
	BooleanFunction as_real() const;

	static void check_arity(int n);

private:
	int n_ = 0;
	std::vector<double> values_;
	Codomain codomain_ = Codomain::Real;
};

inline int sign_of(std::uint64_t x, int i) { return ((x >> i) & 1u) ? 1 : -1; }

// exact equality of tables
bool operator==(const BooleanFunction& a, const BooleanFunction& b);

} // namespace qsc
