#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/rng.hpp"

namespace qsc {

// (N, M) with N, M standard in R^d and E[N_i M_j] = rho [i == j]
class GaussSampler {
public:
	GaussSampler(int dimension, double rho, std::uint64_t seed);

	int dimension() const noexcept { return d_; }
	double rho() const noexcept { return rho_; }
	std::uint64_t seed() const noexcept { return seed_; }

	void draw(SplitMix64& rng, double* n, double* m) const;
	// sample covariance of (N, M), 2d x 2d row-major
	std::vector<double> sample_covariance(std::uint64_t samples) const;
	std::vector<double> target_covariance() const;

private:
	int d_;
	double rho_;
	std::uint64_t seed_;
};

// [0,1]-valued test function on R^d, addressed by spec string:
//   halfspace:t=..|mass=..      1{z_1 <= t}
//   slab:a=..,b=..|mass=..      1{a <= z_1 <= b}, centred when given a mass
//   ball:r=..|mass=..           1{|z| <= r}
//   sigmoid:t=..,s=..           1 / (1 + exp((z_1 - t) / s))
//   const:c=..                  c
class GaussianTestFunction {
public:
	static GaussianTestFunction parse(std::string_view spec, int dimension);

	double operator()(const double* z) const;
	// exact Gaussian mean
	double mean() const { return mean_; }
	bool indicator() const { return indicator_; }
	const std::string& spec() const { return spec_; }

private:
	enum class Kind { HalfSpace, Slab, Ball, Sigmoid, Constant };
	Kind kind_ = Kind::Constant;
	int d_ = 1;
	double a_ = 0.0;
	double b_ = 0.0;
	double mean_ = 0.0;
	bool indicator_ = false;
	std::string spec_;
};

struct BorellCheck {
	double functional = 0.0;      // E J_rho(f(N), g(M))
	double functional_se = 0.0;
	double inner = 0.0;           // E f(N) g(M)
	double inner_se = 0.0;
	double mean_f = 0.0;
	double mean_g = 0.0;
	double rhs = 0.0;             // J_rho(E f, E g)
	double margin = 0.0;          // rhs - functional
	bool ok = false;              // both left sides <= rhs + 3 SE
	bool tight = false;           // |inner - rhs| <= 3 SE
};

BorellCheck borell_mc_check(std::string_view f_spec, std::string_view g_spec, double rho, int dimension,
	std::uint64_t samples, std::uint64_t seed, int threads = 0);

struct ReverseHypCheck {
	double p_joint = 0.0;
	double p_joint_se = 0.0;
	double p1 = 0.0;
	double p2 = 0.0;
	double bound = 0.0;         // exp(-(a^2 + b^2 + 2|rho| a b) / (1 - rho^2)), P[B] = e^{-a^2}
	double eps_bound = 0.0;     // min(P1,P2)^{2/(1-|rho|)}
	bool ok = false;            // p_joint >= bound - 3 SE
};

// B1, B2 are indicator specs; marginals use the exact masses
ReverseHypCheck gaussian_reverse_hyp_check(std::string_view b1_spec, std::string_view b2_spec, double rho, int dimension,
	std::uint64_t samples, std::uint64_t seed, int threads = 0);

struct TournamentEstimate {
	int k = 0;
	double p_unique_max = 0.0;
	double p_unique_max_se = 0.0;
	double p_acyclic = 0.0;
	double p_acyclic_se = 0.0;
	double cov_shared = 0.0;    // empirical Cov(N_{a>b}, N_{a>c})
};

// N_{a>b} = (X_a - X_b + Z_{a>b}) / sqrt(3); a beats b when N_{a>b} > 0
TournamentEstimate tournament_mc(int k, std::uint64_t samples, std::uint64_t seed, int threads = 0);

} // namespace qsc
