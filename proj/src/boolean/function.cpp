#include "qsc/boolean/function.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsc {

std::string to_string(Codomain c)
{
	switch (c) {
	case Codomain::PlusMinusOne:
		return "pm1";
	case Codomain::ZeroOne:
		return "01";
	case Codomain::Real:
		return "real";
	}
	return "real";
}

Codomain codomain_from_string(std::string_view s)
{
	if (s == "pm1" || s == "PlusMinusOne")
		return Codomain::PlusMinusOne;
	if (s == "01" || s == "ZeroOne")
		return Codomain::ZeroOne;
	if (s == "real" || s == "Real")
		return Codomain::Real;
	throw std::invalid_argument("unknown codomain '" + std::string(s) + "'");
}

void BooleanFunction::check_arity(int n)
{
	if (n < 0 || n > kMaxDenseArity)
		throw std::out_of_range("arity " + std::to_string(n) + " outside [0," + std::to_string(kMaxDenseArity) + "]");
}

BooleanFunction::BooleanFunction(int n, std::vector<double> values, Codomain codomain)
	: n_(n), values_(std::move(values)), codomain_(codomain)
{
	check_arity(n);
	if (values_.size() != (std::size_t{1} << n))
		throw std::invalid_argument("table length " + std::to_string(values_.size()) + " is not 2^" + std::to_string(n));
	if (codomain_ == Codomain::PlusMinusOne) {
		for (double v : values_)
			if (v != 1.0 && v != -1.0)
				throw std::invalid_argument("pm1 function has entry outside {-1,+1}");
	} else if (codomain_ == Codomain::ZeroOne) {
		for (double v : values_)
			if (v != 0.0 && v != 1.0)
				throw std::invalid_argument("01 function has entry outside {0,1}");
	}
}

double BooleanFunction::mean() const
{
	double s = 0.0;
	for (double v : values_)
		s += v;
	return s / static_cast<double>(values_.size());
}

double BooleanFunction::variance() const
{
	const double m = mean();
	double s = 0.0;
	for (double v : values_)
		s += (v - m) * (v - m);
	return s / static_cast<double>(values_.size());
}

bool BooleanFunction::is_constant() const
{
	return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == values_.front(); });
}

BooleanFunction BooleanFunction::to_plus_minus() const
{
	if (codomain_ == Codomain::PlusMinusOne)
		return *this;
	if (codomain_ != Codomain::ZeroOne)
		throw std::invalid_argument("only 01 functions convert to pm1");
	std::vector<double> v(values_.size());
	std::transform(values_.begin(), values_.end(), v.begin(), [](double y) { return 2.0 * y - 1.0; });
	return BooleanFunction(n_, std::move(v), Codomain::PlusMinusOne);
}

BooleanFunction BooleanFunction::to_zero_one() const
{
	if (codomain_ == Codomain::ZeroOne)
		return *this;
	if (codomain_ != Codomain::PlusMinusOne)
		throw std::invalid_argument("only pm1 functions convert to 01");
	std::vector<double> v(values_.size());
	std::transform(values_.begin(), values_.end(), v.begin(), [](double y) { return (1.0 + y) / 2.0; });
	return BooleanFunction(n_, std::move(v), Codomain::ZeroOne);
}

BooleanFunction BooleanFunction::as_real() const
{
	return BooleanFunction(n_, values_, Codomain::Real);
}

bool operator==(const BooleanFunction& a, const BooleanFunction& b)
{
	return a.n() == b.n() && a.values() == b.values();
}

} // namespace qsc
