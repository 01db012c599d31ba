#include "qsc/gaussian/quadrant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsc/gaussian/normal.hpp"

namespace qsc {

namespace {

// Gauss-Legendre nodes on (0, 1] mirrored to (0, 2); 6, 12 and 20 points
struct Legendre {
	const double* w;
	const double* x;
	int half;
};

constexpr double kW6[] = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr double kX6[] = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
constexpr double kW12[] = {0.04717533638651177, 0.1069393259953183, 0.1600783285433464, 0.2031674267230659,
	0.2334925365383547, 0.2491470458134029};
constexpr double kX12[] = {0.9815606342467191, 0.9041172563704750, 0.7699026741943050, 0.5873179542866171,
	0.3678314989981802, 0.1252334085114692};
constexpr double kW20[] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
	0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183821, 0.1491729864726037,
	0.1527533871307259};
constexpr double kX20[] = {0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
	0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
	0.07652652113349733};

void check_rho(double rho)
{
	if (!(rho > -1.0 && rho < 1.0))
		throw std::domain_error("rho must lie in (-1,1)");
}

// P[X > h, Y > k] for a standard pair with correlation r (Genz's method)
double bvn_upper(double h, double k, double r)
{
	const double tp = 2.0 * std::numbers::pi;
	const double ar = std::abs(r);
	const Legendre g = ar < 0.3 ? Legendre{kW6, kX6, 3} : ar < 0.75 ? Legendre{kW12, kX12, 6} : Legendre{kW20, kX20, 10};
	double hk = h * k;
	double bvn = 0.0;
	if (ar < 0.925) {
		const double hs = (h * h + k * k) / 2.0;
		const double asr = std::asin(r) / 2.0;
		for (int i = 0; i < g.half; ++i)
			for (double node : {1.0 - g.x[i], 1.0 + g.x[i]}) {
				const double sn = std::sin(asr * node);
				bvn += g.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
			}
		return bvn * asr / tp + std_normal_cdf(-h) * std_normal_cdf(-k);
	}
	if (r < 0.0) {
		k = -k;
		hk = -hk;
	}
	const double as = 1.0 - r * r;
	double a = std::sqrt(as);
	const double bs = (h - k) * (h - k);
	const double c = (4.0 - hk) / 8.0;
	const double d = (12.0 - hk) / 80.0;
	double asr = -(bs / as + hk) / 2.0;
	if (asr > -100.0)
		bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
	if (hk > -100.0) {
		const double b = std::sqrt(bs);
		const double sp = std::sqrt(tp) * std_normal_cdf(-b / a);
		bvn -= std::exp(-hk / 2.0) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
	}
	a /= 2.0;
	double sum = 0.0;
	for (int i = 0; i < g.half; ++i)
		for (double node : {1.0 - g.x[i], 1.0 + g.x[i]}) {
			const double xs = (a * node) * (a * node);
			asr = -(bs / xs + hk) / 2.0;
			if (asr <= -100.0)
				continue;
			const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
			const double rs = std::sqrt(1.0 - xs);
			const double ep = std::exp(-(hk / 2.0) * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
			sum += g.w[i] * std::exp(asr) * (sp - ep);
		}
	bvn = (a * sum - bvn) / tp;
	if (r > 0.0)
		return bvn + std_normal_cdf(-std::max(h, k));
	if (h >= k)
		return -bvn;
	const double l = h < 0.0 ? std_normal_cdf(k) - std_normal_cdf(h) : std_normal_cdf(-h) - std_normal_cdf(-k);
	return l - bvn;
}

} // namespace

void QuadrantParams::validate() const
{
	if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0))
		throw std::domain_error("quadrant masses must lie in (0,1)");
	check_rho(rho);
}

double bivariate_normal_cdf(double s, double t, double rho)
{
	check_rho(rho);
	if (std::isinf(s) || std::isinf(t)) {
		if (s == -INFINITY || t == -INFINITY)
			return 0.0;
		return s == INFINITY ? std_normal_cdf(t) : std_normal_cdf(s);
	}
	if (rho == 0.0)
		return std_normal_cdf(s) * std_normal_cdf(t);
	return std::clamp(bvn_upper(-s, -t, rho), 0.0, 1.0);
}

double j_rho(double x, double y, double rho)
{
	check_rho(rho);
	if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0))
		throw std::domain_error("quadrant masses must lie in [0,1]");
	if (x == 0.0 || y == 0.0)
		return 0.0;
	if (x == 1.0)
		return y;
	if (y == 1.0)
		return x;
	if (rho == 0.0)
		return x * y;
	// integrate over the smaller mass for accuracy
	if (x > y)
		std::swap(x, y);
	return bivariate_normal_cdf(std_normal_quantile(x), std_normal_quantile(y), rho);
}

double j_rho_dx(double x, double y, double rho)
{
	check_rho(rho);
	const double s = std_normal_quantile(x);
	const double t = std_normal_quantile(y);
	return std_normal_cdf((t - rho * s) / std::sqrt(1.0 - rho * rho));
}

double j_rho_drho(double x, double y, double rho)
{
	check_rho(rho);
	const double s = std_normal_quantile(x);
	const double t = std_normal_quantile(y);
	const double q = 1.0 - rho * rho;
	return std::exp(-(s * s - 2.0 * rho * s * t + t * t) / (2.0 * q)) / (2.0 * std::numbers::pi * std::sqrt(q));
}

JHessian j_rho_hessian(double x, double y, double rho)
{
	check_rho(rho);
	const double s = std_normal_quantile(x);
	const double t = std_normal_quantile(y);
	const double q = std::sqrt(1.0 - rho * rho);
	const double a = std_normal_pdf((t - rho * s) / q);
	const double b = std_normal_pdf((s - rho * t) / q);
	JHessian h;
	h.xx = a * (-rho / q) / std_normal_pdf(s);
	h.yy = b * (-rho / q) / std_normal_pdf(t);
	h.xy = a / (q * std_normal_pdf(t));
	return h;
}

JHessian j_rho_hessian_fd(double x, double y, double rho, double h)
{
	auto d4 = [h](auto&& g) { return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h); };
	JHessian out;
	out.xx = d4([&](double e) { return j_rho_dx(x + e, y, rho); });
	out.yy = d4([&](double e) { return j_rho_dy(x, y + e, rho); });
	const double xy = d4([&](double e) { return j_rho_dx(x, y + e, rho); });
	const double yx = d4([&](double e) { return j_rho_dy(x + e, y, rho); });
	out.xy = 0.5 * (xy + yx);
	return out;
}

double max_eigenvalue(const JHessian& h, double sigma)
{
	const double off = sigma * h.xy;
	const double mid = 0.5 * (h.xx + h.yy);
	const double rad = std::hypot(0.5 * (h.xx - h.yy), off);
	return mid + rad;
}

std::vector<double> interior_grid(int n, double lo, double hi)
{
	if (n < 1)
		throw std::invalid_argument("grid needs at least one point");
	std::vector<double> g(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i)
		g[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
	return g;
}

JDerivativeReport j_rho_derivative_checks(const std::vector<double>& grid, double rho, const std::vector<double>& sigmas)
{
	check_rho(rho);
	JDerivativeReport rep;
	rep.max_eigenvalue = -INFINITY;
	rep.max_drho_excess = -INFINITY;
	const double h = kJStep;
	const double bound = std::pow(1.0 - rho * rho, -1.5);
	for (double x : grid)
		for (double y : grid) {
			const JHessian hess = j_rho_hessian_fd(x, y, rho, h);
			JDerivativeRow base;
			base.x = x;
			base.y = y;
			base.rho = rho;
			base.value = j_rho(x, y, rho);
			// rho-derivative by central difference of J itself; rho +- h stays inside (-1,1) on the grid rhos
			const double rp = std::min(rho + h, 1.0 - 1e-12);
			const double rm = std::max(rho - h, -1.0 + 1e-12);
			base.drho = (j_rho(x, y, rp) - j_rho(x, y, rm)) / (rp - rm);
			const JHessian hp = j_rho_hessian(std::min(x + h, 1.0 - 1e-9), y, rho);
			const JHessian hm = j_rho_hessian(std::max(x - h, 1e-9), y, rho);
			const JHessian vp = j_rho_hessian(x, std::min(y + h, 1.0 - 1e-9), rho);
			const JHessian vm = j_rho_hessian(x, std::max(y - h, 1e-9), rho);
			base.third_difference = std::max({std::abs(hp.xx - hm.xx), std::abs(vp.xx - vm.xx), std::abs(hp.yy - hm.yy),
										 std::abs(vp.yy - vm.yy)}) /
				(2.0 * h);
			rep.max_drho_excess = std::max(rep.max_drho_excess, std::abs(base.drho) - bound);
			rep.max_third_difference = std::max(rep.max_third_difference, base.third_difference);
			for (double sigma : sigmas) {
				if (!(std::abs(sigma) <= std::abs(rho) + 1e-15))
					throw std::domain_error("sigma must satisfy |sigma| <= rho");
				JDerivativeRow row = base;
				row.sigma = sigma;
				row.max_eigenvalue = max_eigenvalue(hess, sigma);
				rep.max_eigenvalue = std::max(rep.max_eigenvalue, row.max_eigenvalue);
				rep.rows.push_back(row);
			}
		}
	rep.negative_semidefinite = rep.max_eigenvalue <= 1e-6;
	rep.drho_bounded = rep.max_drho_excess <= 1e-6;
	return rep;
}

} // namespace qsc
