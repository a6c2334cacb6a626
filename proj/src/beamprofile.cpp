#include "antibunch/beamprofile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "antibunch/errors.hpp"

namespace antibunch {

namespace {

using cplx = std::complex<double>;

Vec3 normalized(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw ParameterError("beam profile: direction vector must be nonzero");
  return (1.0 / n) * v;
}

}  // namespace

cplx farfield_amplitude(const Vec3& k, const Vec3& rhat, double r, const SourceSpec& src, const BeamSpec& beam) {
  if (!(k.z > 0.0)) return {0.0, 0.0};
  const double kk = k.norm();
  const Vec3 u = normalized(rhat);
  const Vec3 kr = kk * u;
  const double mod = src.mass * std::sqrt(2.0 * std::numbers::pi) *
                     std::exp(log_mono_f(kr, beam) + log_window_g_tilde(kr - k, src)) / r;
  // e^{ikr} / i
  return mod * std::exp(cplx(0.0, kk * r - 0.5 * std::numbers::pi));
}

cplx radial_integral(const Vec3& k, const Vec3& rhat, double r, double eta, const SourceSpec& src,
                     const BeamSpec& beam, const QuadSpec& quad) {
  if (!(eta > 0.0)) throw ParameterError("radial_integral: eta must be > 0");
  if (!(k.z > 0.0)) return {0.0, 0.0};
  const Vec3 u = normalized(rhat);
  const double kk = k.norm();
  const double m = src.mass;
  const double w0 = 0.5 * kk * kk / m;

  auto integrand = [&](double p) {
    const double T = emission_T(p * u, k, src, beam);
    if (T == 0.0) return cplx(0.0, 0.0);
    return p * T * std::exp(cplx(0.0, p * r)) / cplx(0.5 * p * p / m - w0, -eta);
  };

  // support of f(p rhat) along the ray, plus the pole at p = |k|
  const double sigma = std::numbers::sqrt2 * std::max(beam.dk_z, beam.dk_perp);
  const double pf = beam.k0 * u.z;
  const double lo = std::min(kk, pf) - 14.0 * sigma;
  const double hi = std::max(kk, pf) + 14.0 * sigma;
  const int panels = std::clamp(static_cast<int>(std::ceil((hi - lo) * r / std::numbers::pi)), 1, 20000);

  QuadSpec spec = quad;
  spec.max_subdiv = std::max(spec.max_subdiv, 4 * panels + 4000);
  const double scale = 2.0 * std::numbers::pi * m * std::abs(emission_T(kk * u, k, src, beam));
  spec.abs_tol = std::max(spec.abs_tol, quad.rel_tol * scale);
  const std::array<double, 1> cuts{kk};
  const auto res = integrate_1d<cplx>(integrand, lo, hi, spec, cuts, std::max(1, panels / 2));
  return -res.value / (std::sqrt(2.0 * std::numbers::pi) * r);
}

RadialCheck radial_integral_check(const Vec3& k, const Vec3& rhat, double r, const SourceSpec& src,
                                  const BeamSpec& beam, double bias, const QuadSpec& quad) {
  if (!(bias > 0.0)) throw ParameterError("radial_integral_check: bias must be > 0");
  RadialCheck out;
  out.far_field = r >= 10.0 * src.w;
  const double kk = k.norm();
  const double eta0 = bias * kk / (src.mass * r);
  out.etas = {4.0 * eta0, 2.0 * eta0, eta0};
  for (std::size_t i = 0; i < 3; ++i) out.values[i] = radial_integral(k, rhat, r, out.etas[i], src, beam, quad);
  // quadratic extrapolation through eta0, 2 eta0, 4 eta0
  out.extrapolated = (8.0 * out.values[2] - 6.0 * out.values[1] + out.values[0]) / 3.0;
  out.farfield = farfield_amplitude(k, rhat, r, src, beam);
  const double ff = std::abs(out.farfield);
  out.rel_modulus_diff = ff > 0.0 ? std::abs(std::abs(out.extrapolated) / ff - 1.0) : std::abs(out.extrapolated);
  out.converged = std::abs(out.values[2] - out.values[1]) < std::abs(out.values[1] - out.values[0]);
  return out;
}

double angular_half_width(const Vec3& k, const SourceSpec& src, const BeamSpec& beam) {
  if (!(k.z > 0.0)) throw ParameterError("angular_half_width: needs k_z > 0");
  const double kk = k.norm();
  const Vec3 khat = (1.0 / kk) * k;
  // a unit vector perpendicular to k
  Vec3 e = std::abs(khat.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  e = normalized(e - dot(e, khat) * khat);

  auto log_intensity = [&](double alpha) {
    const Vec3 kr = kk * (std::cos(alpha) * khat + std::sin(alpha) * e);
    return 2.0 * (log_mono_f(kr, beam) + log_window_g_tilde(kr - k, src));
  };
  const double ref = log_intensity(0.0);
  auto g = [&](double alpha) { return log_intensity(alpha) - ref + 1.0; };

  double lo = 0.0;
  double hi = 0.5 / (src.w * kk);
  while (g(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > std::numbers::pi / 2) throw ConvergenceError("angular_half_width: no 1/e crossing", hi, 0.0);
  }
  boost::uintmax_t iters = 100;
  const auto root = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (root.first + root.second);
}

}  // namespace antibunch
