#include "antibunch/saddle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "antibunch/errors.hpp"

namespace antibunch {

void SaddleParams::validate() const {
  if (!(p > 0.0)) throw ParameterError("SaddleParams: p must be > 0");
  if (!(q >= 0.0)) throw ParameterError("SaddleParams: q must be >= 0");
}

SaddleParams saddle_params(double k, double w, double w_z, double a, double zbar) {
  const double wk2 = w * w * k * k;
  const double lateral = 1.0 + 2.0 * a * a * wk2 / (zbar * zbar);
  return {wk2 / lateral, w_z * w_z * k * k};
}

SaddlePoint saddle_theta0(const SaddleParams& sp) {
  const double P = sp.p + sp.q;
  if (!(P >= 0.0)) throw DomainError("saddle_theta0: p + q must be >= 0");
  SaddlePoint out;
  if (P == 0.0) {
    out.theta0 = std::numbers::pi / 4.0;
    out.sin2 = 0.5;
    out.limit = true;
    return out;
  }
  // [1 + P - sqrt(1 + P^2)] / (2P), rationalized so it does not cancel
  out.sin2 = 1.0 / (1.0 + P + std::hypot(1.0, P));
  out.theta0 = std::asin(std::sqrt(out.sin2));
  return out;
}

double saddle_stationarity(const SaddleParams& sp, double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return c / s - s / c - 2.0 * (sp.p + sp.q) * s * c;
}

namespace {

double theta_numeric(const SaddleParams& sp, const QuadSpec& quad) {
  const double P = sp.p + sp.q;
  const double p2 = sp.p * sp.p;
  const double q2 = sp.q * sp.q;
  auto integrand = [&](double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double root = std::sqrt(p2 * c * c + q2 * s * s);
    if (root == 0.0) return 0.0;  // only at t = pi/2 with q = 0, where s*c = 0 too
    return P * s * c * std::exp(-P * s * s) / root;
  };
  // the integrand lives within a few Theta0 of the origin for large p + q
  const double t0 = saddle_theta0(sp).theta0;
  const std::array<double, 2> cuts{t0, std::min(8.0 * t0, 0.5 * std::numbers::pi)};
  return integrate_1d<double>(integrand, 0.0, 0.5 * std::numbers::pi, quad, cuts).value;
}

}  // namespace

double theta_integral(const SaddleParams& sp, ThetaMode mode, const QuadSpec& quad,
                      const ThetaIntegralOptions& opts) {
  sp.validate();
  if (mode == ThetaMode::Numeric) return theta_numeric(sp, quad);
  double v = std::sqrt(std::numbers::pi / std::numbers::e) / (2.0 * sp.p);
  if (opts.q_correction) v /= std::sqrt(1.0 + sp.q / (2.0 * sp.p * sp.p));
  return v;
}

double theta_integral_direct(const SaddleParams& sp, const QuadSpec& quad) {
  sp.validate();
  auto integrand = [&](double s) { return std::exp(-sp.p * s * (2.0 - s) - sp.q * s * s); };
  // Geometric cuts from the decay scale 1/(2(p+q)) near the origin, so the
  // quadrature cannot step over the peak at s = 0.
  std::vector<double> cuts;
  for (double c = 0.5 / (sp.p + sp.q); c < 0.5; c *= 4.0) cuts.push_back(c);
  return integrate_1d<double>(integrand, 0.0, 1.0, quad, cuts).value;
}

std::vector<std::string> theta_integral_warnings(const SaddleParams& sp, ThetaMode mode) {
  std::vector<std::string> out;
  if (mode != ThetaMode::Saddle) return out;
  if (sp.p < 10.0) out.emplace_back("theta_integral: saddle estimate used with p < 10");
  if (sp.q >= sp.p * sp.p) out.emplace_back("theta_integral: saddle estimate used with q >= p^2");
  return out;
}

}  // namespace antibunch
