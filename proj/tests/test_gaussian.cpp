#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"

#include "qsc/condorcet/gaussian_arrow.hpp"
#include "qsc/gaussian/montecarlo.hpp"
#include "qsc/gaussian/normal.hpp"
#include "qsc/gaussian/quadrant.hpp"

using namespace qsc;

namespace {

double phi(double u)
{
	return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
}

double Phi(double u)
{
	return 0.5 * std::erfc(-u / std::sqrt(2.0));
}

// P[N1 <= s, N2 <= t] = int_{-inf}^s phi(u) Phi((t - rho u)/sqrt(1-rho^2)) du,
// composite Simpson on [-10, s]
double bvn_oracle(double s, double t, double rho)
{
	const double lo = -10.0;
	if (s <= lo)
		return 0.0;
	const int m = 20000;
	const double h = (s - lo) / m;
	const double q = std::sqrt(1.0 - rho * rho);
	auto g = [&](double u) { return phi(u) * Phi((t - rho * u) / q); };
	double acc = g(lo) + g(s);
	for (int i = 1; i < m; ++i)
		acc += (i % 2 ? 4.0 : 2.0) * g(lo + i * h);
	return acc * h / 3.0;
}

double quantile_oracle(double u)
{
	double lo = -40.0;
	double hi = 40.0;
	for (int i = 0; i < 200; ++i) {
		const double mid = 0.5 * (lo + hi);
		(Phi(mid) < u ? lo : hi) = mid;
	}
	return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("normal cdf, pdf and quantile")
{
	for (double t : {-6.0, -1.5, 0.0, 0.3, 2.0, 7.0}) {
		CHECK(std_normal_cdf(t) == doctest::Approx(Phi(t)).epsilon(1e-14));
		CHECK(std_normal_pdf(t) == doctest::Approx(phi(t)).epsilon(1e-14));
	}
	for (double u : {1e-10, 0.01, 0.3, 0.5, 0.77, 0.999999}) {
		CHECK(std_normal_quantile(u) == doctest::Approx(quantile_oracle(u)).epsilon(1e-10));
		CHECK(std_normal_cdf(std_normal_quantile(u)) == doctest::Approx(u).epsilon(1e-13));
	}
}

TEST_CASE("arcsine constants")
{
	CHECK(sheppard(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
	CHECK(guilbaud_constant() == doctest::Approx(1.0 - 3.0 * std::acos(-1.0 / 3.0) / (2.0 * std::numbers::pi)).epsilon(1e-15));
	CHECK(guilbaud_constant() == doctest::Approx(0.0877398280459).epsilon(1e-11));
	// (2/pi) arcsin(sqrt(1/2)) = 1/2
	CHECK(predictability_crossover() == doctest::Approx(0.5).epsilon(1e-10));
	CHECK(majority_predictability(0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("bivariate normal cdf against quadrature")
{
	for (double rho : {-0.95, -0.6, -1.0 / 3.0, 0.0, 0.2, 0.4, 0.9, 0.97})
		for (double s : {-2.0, -0.3, 0.0, 1.1})
			for (double t : {-1.0, 0.0, 0.8, 2.5})
				CHECK(bivariate_normal_cdf(s, t, rho) == doctest::Approx(bvn_oracle(s, t, rho)).epsilon(1e-9));
	// the orthant formula
	for (double rho : {-0.9, -0.2, 0.3, 0.99})
		CHECK(bivariate_normal_cdf(0.0, 0.0, rho) == doctest::Approx(0.25 + std::asin(rho) / (2.0 * std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("J at the centre and the boundary")
{
	for (double rho : {-0.8, 0.2, 0.5, 0.8})
		CHECK(std::abs(j_rho(0.5, 0.5, rho) - (0.25 + std::asin(rho) / (2.0 * std::numbers::pi))) < 1e-12);
	CHECK(j_rho(0.0, 0.4, 0.3) == 0.0);
	CHECK(j_rho(1.0, 0.4, 0.3) == doctest::Approx(0.4));
	CHECK(j_rho(0.3, 0.6, 0.0) == doctest::Approx(0.18));
	CHECK_THROWS_AS(j_rho(1.5, 0.5, 0.1), std::domain_error);
	QuadrantParams bad{0.5, 0.5, 2.0};
	CHECK_THROWS(bad.validate());
}

TEST_CASE("J derivatives against finite differences of the quadrature oracle")
{
	const double h = 1e-5;
	for (double rho : {-0.5, 0.3, 0.8})
		for (double x : {0.2, 0.5, 0.9})
			for (double y : {0.1, 0.6}) {
				auto J = [&](double a, double b, double r) {
					return bvn_oracle(quantile_oracle(a), quantile_oracle(b), r);
				};
				const double dx = (J(x + h, y, rho) - J(x - h, y, rho)) / (2 * h);
				const double dr = (J(x, y, rho + h) - J(x, y, rho - h)) / (2 * h);
				CHECK(j_rho_dx(x, y, rho) == doctest::Approx(dx).epsilon(1e-5));
				CHECK(j_rho_drho(x, y, rho) == doctest::Approx(dr).epsilon(1e-5));
			}
}

TEST_CASE("analytic and finite-difference Hessians agree")
{
	for (double rho : {0.2, 0.5, 0.8})
		for (double x : interior_grid(7))
			for (double y : interior_grid(5)) {
				const JHessian a = j_rho_hessian(x, y, rho);
				const JHessian f = j_rho_hessian_fd(x, y, rho);
				CHECK(a.xx == doctest::Approx(f.xx).epsilon(1e-6));
				CHECK(a.xy == doctest::Approx(f.xy).epsilon(1e-6));
				CHECK(a.yy == doctest::Approx(f.yy).epsilon(1e-6));
			}
}

TEST_CASE("M_{rho sigma} is negative semidefinite for sigma up to rho")
{
	const auto grid = interior_grid(19);
	for (double rho : {0.2, 0.5, 0.8}) {
		const JDerivativeReport r = j_rho_derivative_checks(grid, rho, {0.0, rho / 2.0, rho});
		CHECK(r.negative_semidefinite);
		CHECK(r.drho_bounded);
		CHECK(r.rows.size() == grid.size() * grid.size() * 3);
	}
	CHECK_THROWS_AS(j_rho_derivative_checks(interior_grid(9), 0.3, {0.9}), std::domain_error);
}

TEST_CASE("correlated Gaussian sampler")
{
	const GaussSampler g(3, 0.6, 4);
	const auto emp = g.sample_covariance(200000);
	const auto tgt = g.target_covariance();
	REQUIRE(emp.size() == tgt.size());
	for (std::size_t i = 0; i < emp.size(); ++i)
		CHECK(std::abs(emp[i] - tgt[i]) < 0.02);
}

TEST_CASE("Borell inequality holds and is tight for parallel half-spaces")
{
	const BorellCheck c = borell_mc_check("halfspace:t=0.3", "halfspace:t=0.3", 0.6, 2, 200000, 3, 1);
	CHECK(c.ok);
	CHECK(c.tight);
	const BorellCheck b = borell_mc_check("ball:mass=0.4", "slab:mass=0.5", 0.5, 2, 200000, 3, 1);
	CHECK(b.ok);
	CHECK(b.inner <= b.rhs + 3.0 * b.inner_se);
	// deterministic under a fixed seed whatever the thread count
	const BorellCheck t = borell_mc_check("ball:mass=0.4", "slab:mass=0.5", 0.5, 2, 200000, 3, 2);
	CHECK(t.inner == b.inner);
}

TEST_CASE("Gaussian reverse bound")
{
	for (double rho : {-0.6, -1.0 / 3.0, 0.4}) {
		const ReverseHypCheck c = gaussian_reverse_hyp_check("halfspace:mass=0.2", "halfspace:mass=0.35", rho, 1, 200000, 9, 1);
		CHECK(c.ok);
		CHECK(c.p_joint >= c.eps_bound - 3.0 * c.p_joint_se);
	}
}

TEST_CASE("tournament simulation for three alternatives")
{
	const TournamentEstimate e = tournament_mc(3, 400000, 2, 1);
	// three alternatives: a unique maximum iff the tournament is acyclic
	CHECK(std::abs(e.p_unique_max - (1.0 - guilbaud_constant())) < 4.0 * e.p_unique_max_se);
	CHECK(e.p_acyclic == doctest::Approx(e.p_unique_max));
	CHECK(e.cov_shared == doctest::Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("Gaussian Arrow agreement bound")
{
	const GaussianArrowCheck c = gaussian_arrow_bound_check({0.0, 0.0, 0.0}, 0.1, 400000, 6, 1);
	CHECK(c.applicable);
	CHECK(c.ok);
	CHECK(std::abs(c.p_agree - gaussian_arrow_zero_threshold_agreement()) < 4.0 * c.std_error);
}
