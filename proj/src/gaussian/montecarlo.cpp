#include "qsc/gaussian/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "qsc/gaussian/normal.hpp"
#include "qsc/gaussian/quadrant.hpp"
#include "qsc/parallel.hpp"
#include "qsc/spec_string.hpp"

namespace qsc {

namespace {

constexpr int kMaxDimension = 64;
constexpr int kMaxTournament = 32;

void check_dimension(int d)
{
	if (d < 1 || d > kMaxDimension)
		throw std::invalid_argument("dimension must lie in [1,64]");
}

void check_open_rho(double rho)
{
	if (!(rho > -1.0 && rho < 1.0))
		throw std::domain_error("rho must lie in (-1,1)");
}

} // namespace

GaussSampler::GaussSampler(int dimension, double rho, std::uint64_t seed) : d_(dimension), rho_(rho), seed_(seed)
{
	check_dimension(dimension);
	if (!(rho >= -1.0 && rho <= 1.0))
		throw std::domain_error("rho must lie in [-1,1]");
}

void GaussSampler::draw(SplitMix64& rng, double* n, double* m) const
{
	const double c = std::sqrt(std::max(0.0, 1.0 - rho_ * rho_));
	for (int i = 0; i < d_; ++i) {
		n[i] = rng.normal();
		m[i] = rho_ * n[i] + c * rng.normal();
	}
}

std::vector<double> GaussSampler::sample_covariance(std::uint64_t samples) const
{
	const int w = 2 * d_;
	std::vector<double> sum(static_cast<std::size_t>(w), 0.0);
	std::vector<double> cross(static_cast<std::size_t>(w * w), 0.0);
	std::vector<double> v(static_cast<std::size_t>(w));
	SplitMix64 rng = stream(seed_, 0);
	for (std::uint64_t s = 0; s < samples; ++s) {
		draw(rng, v.data(), v.data() + d_);
		for (int i = 0; i < w; ++i) {
			sum[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
			for (int j = 0; j < w; ++j)
				cross[static_cast<std::size_t>(i * w + j)] += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
		}
	}
	const double n = static_cast<double>(samples);
	for (int i = 0; i < w; ++i)
		for (int j = 0; j < w; ++j)
			cross[static_cast<std::size_t>(i * w + j)] = cross[static_cast<std::size_t>(i * w + j)] / n -
				sum[static_cast<std::size_t>(i)] * sum[static_cast<std::size_t>(j)] / (n * n);
	return cross;
}

std::vector<double> GaussSampler::target_covariance() const
{
	const int w = 2 * d_;
	std::vector<double> c(static_cast<std::size_t>(w * w), 0.0);
	for (int i = 0; i < w; ++i)
		c[static_cast<std::size_t>(i * w + i)] = 1.0;
	for (int i = 0; i < d_; ++i) {
		c[static_cast<std::size_t>(i * w + i + d_)] = rho_;
		c[static_cast<std::size_t>((i + d_) * w + i)] = rho_;
	}
	return c;
}

GaussianTestFunction GaussianTestFunction::parse(std::string_view spec, int dimension)
{
	check_dimension(dimension);
	const SpecString s = SpecString::parse(spec);
	GaussianTestFunction f;
	f.d_ = dimension;
	f.spec_ = std::string(spec);
	if (s.name == "halfspace") {
		s.expect_only({"t", "mass"});
		f.kind_ = Kind::HalfSpace;
		f.indicator_ = true;
		f.a_ = s.has("mass") ? std_normal_quantile(s.get_double("mass")) : s.get_double("t", 0.0);
		f.mean_ = std_normal_cdf(f.a_);
	} else if (s.name == "slab") {
		s.expect_only({"a", "b", "mass"});
		f.kind_ = Kind::Slab;
		f.indicator_ = true;
		if (s.has("mass")) {
			f.b_ = std_normal_quantile((1.0 + s.get_double("mass")) / 2.0);
			f.a_ = -f.b_;
		} else {
			f.a_ = s.get_double("a");
			f.b_ = s.get_double("b");
			if (f.b_ < f.a_)
				throw std::invalid_argument("slab needs a <= b");
		}
		f.mean_ = std_normal_cdf(f.b_) - std_normal_cdf(f.a_);
	} else if (s.name == "ball") {
		s.expect_only({"r", "mass"});
		f.kind_ = Kind::Ball;
		f.indicator_ = true;
		const boost::math::chi_squared chi(dimension);
		if (s.has("mass")) {
			const double m = s.get_double("mass");
			if (!(m > 0.0 && m < 1.0))
				throw std::domain_error("ball mass must lie in (0,1)");
			f.a_ = boost::math::quantile(chi, m);
		} else {
			const double r = s.get_double("r");
			f.a_ = r * r;
		}
		f.mean_ = f.a_ <= 0.0 ? 0.0 : boost::math::cdf(chi, f.a_);
	} else if (s.name == "sigmoid") {
		s.expect_only({"t", "s"});
		f.kind_ = Kind::Sigmoid;
		f.a_ = s.get_double("t", 0.0);
		f.b_ = s.get_double("s", 1.0);
		if (!(f.b_ > 0.0))
			throw std::domain_error("sigmoid scale must be positive");
		const double a = f.a_;
		const double b = f.b_;
		auto g = [a, b](double z) { return std_normal_pdf(z) / (1.0 + std::exp((z - a) / b)); };
		f.mean_ = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -12.0, 12.0, 15, 1e-14);
	} else if (s.name == "const") {
		s.expect_only({"c"});
		f.kind_ = Kind::Constant;
		f.a_ = s.get_double("c", 1.0);
		if (!(f.a_ >= 0.0 && f.a_ <= 1.0))
			throw std::domain_error("constant must lie in [0,1]");
		f.indicator_ = f.a_ == 0.0 || f.a_ == 1.0;
		f.mean_ = f.a_;
	} else {
		throw std::invalid_argument("unknown Gaussian test family '" + s.name + "'");
	}
	return f;
}

double GaussianTestFunction::operator()(const double* z) const
{
	switch (kind_) {
	case Kind::HalfSpace:
		return z[0] <= a_ ? 1.0 : 0.0;
	case Kind::Slab:
		return z[0] >= a_ && z[0] <= b_ ? 1.0 : 0.0;
	case Kind::Ball: {
		double r2 = 0.0;
		for (int i = 0; i < d_; ++i)
			r2 += z[i] * z[i];
		return r2 <= a_ ? 1.0 : 0.0;
	}
	case Kind::Sigmoid:
		return 1.0 / (1.0 + std::exp((z[0] - a_) / b_));
	case Kind::Constant:
		return a_;
	}
	return 0.0;
}

BorellCheck borell_mc_check(std::string_view f_spec, std::string_view g_spec, double rho, int dimension,
	std::uint64_t samples, std::uint64_t seed, int threads)
{
	check_open_rho(rho);
	const auto f = GaussianTestFunction::parse(f_spec, dimension);
	const auto g = GaussianTestFunction::parse(g_spec, dimension);
	const GaussSampler sampler(dimension, rho, seed);
	const auto m = monte_carlo<2>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 2>& out) {
			std::array<double, kMaxDimension> n{};
			std::array<double, kMaxDimension> w{};
			sampler.draw(rng, n.data(), w.data());
			const double a = f(n.data());
			const double b = g(w.data());
			out[1] = a * b;
			// J agrees with the product whenever one argument is 0 or 1
			out[0] = (f.indicator() || g.indicator()) && (a == 0.0 || a == 1.0 || b == 0.0 || b == 1.0)
				? a * b
				: j_rho(a, b, rho);
		},
		threads);
	BorellCheck c;
	c.functional = m[0].mean();
	c.functional_se = m[0].std_error();
	c.inner = m[1].mean();
	c.inner_se = m[1].std_error();
	c.mean_f = f.mean();
	c.mean_g = g.mean();
	c.rhs = j_rho(c.mean_f, c.mean_g, rho);
	c.margin = c.rhs - c.functional;
	c.ok = c.functional <= c.rhs + 3.0 * c.functional_se + 1e-12 && c.inner <= c.rhs + 3.0 * c.inner_se + 1e-12;
	c.tight = std::abs(c.inner - c.rhs) <= 3.0 * c.inner_se + 1e-12;
	return c;
}

ReverseHypCheck gaussian_reverse_hyp_check(std::string_view b1_spec, std::string_view b2_spec, double rho, int dimension,
	std::uint64_t samples, std::uint64_t seed, int threads)
{
	check_open_rho(rho);
	const auto b1 = GaussianTestFunction::parse(b1_spec, dimension);
	const auto b2 = GaussianTestFunction::parse(b2_spec, dimension);
	if (!b1.indicator() || !b2.indicator())
		throw std::invalid_argument("reverse hypercontractivity needs set indicators");
	const GaussSampler sampler(dimension, rho, seed);
	const auto m = monte_carlo<1>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 1>& out) {
			std::array<double, kMaxDimension> n{};
			std::array<double, kMaxDimension> w{};
			sampler.draw(rng, n.data(), w.data());
			out[0] = b1(n.data()) * b2(w.data());
		},
		threads);
	ReverseHypCheck c;
	c.p_joint = m[0].mean();
	c.p_joint_se = m[0].std_error();
	c.p1 = b1.mean();
	c.p2 = b2.mean();
	if (c.p1 <= 0.0 || c.p2 <= 0.0) {
		c.bound = 0.0;
		c.eps_bound = 0.0;
	} else {
		const double a = std::sqrt(-std::log(c.p1));
		const double b = std::sqrt(-std::log(c.p2));
		const double r = std::abs(rho);
		c.bound = std::exp(-(a * a + b * b + 2.0 * r * a * b) / (1.0 - rho * rho));
		c.eps_bound = std::pow(std::min(c.p1, c.p2), 2.0 / (1.0 - r));
	}
	c.ok = c.p_joint >= c.bound - 3.0 * c.p_joint_se - 1e-12;
	return c;
}

TournamentEstimate tournament_mc(int k, std::uint64_t samples, std::uint64_t seed, int threads)
{
	if (k < 2 || k > kMaxTournament)
		throw std::invalid_argument("tournament size must lie in [2,32]");
	const double scale = 1.0 / std::sqrt(3.0);
	const auto m = monte_carlo<3>(
		samples, seed,
		[&](SplitMix64& rng, std::array<double, 3>& out) {
			std::array<double, kMaxTournament> x{};
			std::array<int, kMaxTournament> wins{};
			for (int a = 0; a < k; ++a)
				x[static_cast<std::size_t>(a)] = rng.normal();
			double n01 = 0.0;
			double n02 = 0.0;
			for (int a = 0; a < k; ++a)
				for (int b = a + 1; b < k; ++b) {
					const double nab = (x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)] + rng.normal()) * scale;
					++wins[static_cast<std::size_t>(nab > 0.0 ? a : b)];
					if (a == 0 && b == 1)
						n01 = nab;
					if (a == 0 && b == 2)
						n02 = nab;
				}
			std::array<bool, kMaxTournament> seen{};
			bool distinct = true;
			bool top = false;
			for (int a = 0; a < k; ++a) {
				const int w = wins[static_cast<std::size_t>(a)];
				top = top || w == k - 1;
				distinct = distinct && !seen[static_cast<std::size_t>(w)];
				seen[static_cast<std::size_t>(w)] = true;
			}
			out[0] = top ? 1.0 : 0.0;
			out[1] = distinct ? 1.0 : 0.0;
			out[2] = k >= 3 ? n01 * n02 : 0.0;
		},
		threads);
	TournamentEstimate t;
	t.k = k;
	t.p_unique_max = m[0].mean();
	t.p_unique_max_se = m[0].std_error();
	t.p_acyclic = m[1].mean();
	t.p_acyclic_se = m[1].std_error();
	t.cov_shared = m[2].mean();
	return t;
}

} // namespace qsc
