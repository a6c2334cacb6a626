#include "antibunch/dists.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "antibunch/errors.hpp"

namespace antibunch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// log N as a function of x = beta (omega - mu)
double log_occupation_x(double x, Statistics s) {
  switch (s) {
    case Statistics::Fermion:
      return -(std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))));
    case Statistics::Boson:
      if (!(x > 0.0)) throw DomainError("occupation: Bose occupation needs omega > mu");
      return x > 30.0 ? -x - std::log1p(-std::exp(-x)) : -std::log(std::expm1(x));
    case Statistics::Classical:
      return -x;
  }
  return 0.0;
}

}  // namespace

Vec3 unit_vector(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

double occupation(double omega, const SourceSpec& src) {
  return std::exp(log_occupation_x(src.beta * (omega - src.mu), src.statistics));
}

double window_g(const Vec3& r, const SourceSpec& src) {
  if (!(src.w_z > 0.0)) throw DomainError("window_g: w_z = 0 makes g a delta function in z");
  const double w2 = src.w * src.w;
  const double wz2 = src.w_z * src.w_z;
  const double norm = std::pow(kTwoPi, -1.5) / (w2 * src.w_z);
  return norm * std::exp(-0.5 * r.perp2() / w2 - 0.5 * r.z * r.z / wz2);
}

double log_window_g_tilde(const Vec3& dk, const SourceSpec& src) {
  const double w2 = src.w * src.w;
  const double wz2 = src.w_z * src.w_z;
  return -3.0 * std::log(kTwoPi) - 0.5 * (w2 * dk.perp2() + wz2 * dk.z * dk.z);
}

double log_mono_f(const Vec3& k, const BeamSpec& beam) {
  const double p2 = beam.dk_perp * beam.dk_perp;
  const double z2 = beam.dk_z * beam.dk_z;
  const double dz = k.z - beam.k0;
  const double log_norm = -0.25 * std::log(kTwoPi * kTwoPi * kTwoPi * p2 * p2 * z2);
  return log_norm - 0.25 * (k.perp2() / p2 + dz * dz / z2);
}

int resolution_dims(const DetectorSpec& det) {
  return (det.a > 0.0 ? 2 : 0) + (det.d > 0.0 ? 1 : 0);
}

double resolution_R(const Vec3& r, const Vec3& rbar, const DetectorSpec& det) {
  if (resolution_dims(det) != 3)
    throw DomainError("resolution_R: a = 0 or d = 0 is a delta function; use resolution_R_reduced");
  return resolution_R_reduced(r, rbar, det);
}

double resolution_R_reduced(const Vec3& r, const Vec3& rbar, const DetectorSpec& det) {
  const Vec3 u = r - rbar;
  double log_r = 0.0;
  if (det.a > 0.0) {
    const double a2 = det.a * det.a;
    log_r += -std::log(kTwoPi * a2) - 0.5 * u.perp2() / a2;
  }
  if (det.d > 0.0) {
    const double d2 = det.d * det.d;
    log_r += -0.5 * std::log(kTwoPi * d2) - 0.5 * u.z * u.z / d2;
  }
  return std::exp(log_r);
}

double emission_T(const Vec3& kprime, const Vec3& k, const SourceSpec& src, const BeamSpec& beam) {
  if (!(k.z > 0.0)) return 0.0;
  return std::exp(log_mono_f(kprime, beam) + log_window_g_tilde(kprime - k, src));
}

double log_effective_spectrum(double k, const SourceSpec& src, const BeamSpec& beam) {
  return log_occupation_x(src.beta * (omega(k, src) - src.mu), src.statistics) +
         2.0 * log_mono_f(Vec3{0.0, 0.0, k}, beam);
}

double effective_spectrum(double k, const SourceSpec& src, const BeamSpec& beam) {
  return std::exp(log_effective_spectrum(k, src, beam));
}

KWindow spectrum_window(const SourceSpec& src, const BeamSpec& beam, const QuadSpec& quad,
                        double rel_floor) {
  const double n = quad.k_window_sigmas;
  const double lo0 = std::max(0.0, beam.k0 - n * beam.dk_z);
  const double hi0 = beam.k0 + n * beam.dk_z;

  if (src.statistics == Statistics::Boson && !(omega(lo0, src) > src.mu))
    throw DomainError("spectrum_window: Bose occupation diverges inside the momentum window (mu too high)");

  // bracketing scan well beyond the base window
  const double scan_lo = std::max(0.0, beam.k0 - 60.0 * beam.dk_z);
  const double scan_hi = beam.k0 + 60.0 * beam.dk_z;
  constexpr int kPoints = 4001;
  const double step = (scan_hi - scan_lo) / (kPoints - 1);
  std::vector<double> logd(kPoints, -std::numeric_limits<double>::infinity());
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPoints; ++i) {
    const double k = scan_lo + i * step;
    if (src.statistics == Statistics::Boson && !(omega(k, src) > src.mu)) continue;
    logd[i] = log_effective_spectrum(k, src, beam);
    peak = std::max(peak, logd[i]);
  }

  KWindow win{lo0, hi0, {}, peak};
  const double cut = peak + std::log(rel_floor);
  for (int i = 0; i < kPoints; ++i) {
    if (logd[i] < cut) continue;
    const double k = scan_lo + i * step;
    win.lo = std::min(win.lo, std::max(scan_lo, k - step));
    win.hi = std::max(win.hi, std::min(scan_hi, k + step));
  }
  if (src.statistics == Statistics::Boson && !(omega(win.lo, src) > src.mu))
    throw DomainError("spectrum_window: Bose occupation diverges inside the momentum window (mu too high)");

  if (beam.k0 > win.lo && beam.k0 < win.hi) win.breakpoints.push_back(beam.k0);
  if (src.statistics == Statistics::Fermion && src.mu > 0.0) {
    const double kf = std::sqrt(2.0 * src.mass * src.mu);
    if (kf > win.lo && kf < win.hi) win.breakpoints.push_back(kf);
  }
  std::sort(win.breakpoints.begin(), win.breakpoints.end());
  return win;
}

Normalizations normalizations(const SourceSpec& src, const BeamSpec& beam, const DetectorSpec& det,
                              const QuadSpec& quad) {
  constexpr double n = 12.0;
  auto box = [](const Vec3& c, const Vec3& sd) {
    return Box{{c.x - n * sd.x, c.y - n * sd.y, c.z - n * sd.z}, {c.x + n * sd.x, c.y + n * sd.y, c.z + n * sd.z}};
  };
  auto at = [](std::span<const double> x) { return Vec3{x[0], x[1], x[2]}; };

  Normalizations out;
  const auto g = integrate_nd([&](std::span<const double> x) { return window_g(at(x), src); },
                              box({}, {src.w, src.w, src.w_z}), quad);
  // f^2 has standard deviations dk_perp / sqrt(2), dk_z / sqrt(2)
  const auto f2 = integrate_nd([&](std::span<const double> x) { return mono_f2(at(x), beam); },
                               box({0.0, 0.0, beam.k0}, {beam.dk_perp, beam.dk_perp, beam.dk_z}), quad);
  const DetectorSpec d = resolution_dims(det) == 3 ? det : DetectorSpec{1.0, 1.0};
  const Vec3 rbar{0.0, 0.0, 100.0};
  const auto r = integrate_nd([&](std::span<const double> x) { return resolution_R(at(x), rbar, d); },
                              box(rbar, {d.a, d.a, d.d}), quad);
  out.g = g.value;
  out.f2 = f2.value;
  out.R = r.value;
  out.max_abs_error = std::max({g.abs_error, f2.abs_error, r.abs_error});
  return out;
}

}  // namespace antibunch
