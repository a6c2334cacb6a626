#include "antibunch/collinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "antibunch/errors.hpp"
#include "antibunch/saddle.hpp"
#include "antibunch/special.hpp"

namespace antibunch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const double kPiOverE = kPi / std::numbers::e;

void require_monochromatized(const CollinearSetup& s) {
  if (!s.beam.well_monochromatized())
    throw ParameterError("closed form needs a well-monochromatized beam (dk_z < mono_limit * k0)");
}

// k^2 N(omega_k) f^2(k z^) e^-shift, evaluated in log space. The shift keeps
// deeply degenerate or cold spectra from underflowing inside c_normalized.
double weight_k2(double k, const CollinearSetup& s, double shift) {
  if (!(k > 0.0)) return 0.0;
  return std::exp(2.0 * std::log(k) + log_effective_spectrum(k, s.src, s.beam) - shift);
}

double weight_flat(double k, const CollinearSetup& s, double shift) {
  if (!(k > 0.0)) return 0.0;
  return std::exp(log_effective_spectrum(k, s.src, s.beam) - shift);
}

template <class V, class F>
QuadResult<V> integrate_kk(F&& f, const KWindow& win, const QuadSpec& spec, double scale) {
  return integrate_square<V>(f, win.lo, win.hi, win.breakpoints, spec, scale);
}

// Polar moments m_n = int_0^1 ds (P u)^n / n! exp(-P u - Q s^2), u = s (2 - s).
template <std::size_t N>
VecN<N> polar_moments(double P, double Q) {
  auto integrand = [P, Q](double s) {
    const double v = P * s * (2.0 - s);
    double t = std::exp(-v - Q * s * s);
    VecN<N> out;
    out[0] = t;
    for (std::size_t j = 1; j < N; ++j) {
      t *= v / static_cast<double>(j);
      out[j] = t;
    }
    return out;
  };
  std::array<double, 5> cuts{};
  for (int i = 0; i < 5; ++i) cuts[i] = std::ldexp(0.5, 2 * i) / P;  // 0.5/P .. 128/P
  QuadSpec spec{1e-10};
  spec.max_subdiv = 2000;
  return integrate_1d<VecN<N>>(integrand, 0.0, 1.0, spec, cuts).value;
}

struct AngularInputs {
  double P1, Q1, P2, Q2;
  double x0;  // half the coefficient of sin(theta1) sin(theta2) in the I0 argument
};

double angular_direct(const AngularInputs& in) {
  // With r = x0^2 / (P1 P2) < 1 the exponent is bounded by
  // -(1 - sqrt r)(P1 u1 + P2 u2), so u_i beyond 60 / ((1 - sqrt r) P_i) adds
  // nothing at double precision.
  const double r = in.P1 > 0.0 && in.P2 > 0.0 ? in.x0 * in.x0 / (in.P1 * in.P2) : 1.0;
  const double c = r < 0.98 ? 1.0 - std::sqrt(r) : 0.0;
  auto upper = [c](double P) {
    if (c == 0.0) return 1.0;
    const double u = 60.0 / (c * P);
    return u >= 1.0 ? 1.0 : 1.0 - std::sqrt(1.0 - u);
  };
  auto cuts_for = [](double P, double hi) {
    std::vector<double> out;
    for (double x : {1.0 / P, 8.0 / P, 64.0 / P})
      if (x > 0.0 && x < hi) out.push_back(x);
    return out;
  };
  const double hi1 = upper(in.P1), hi2 = upper(in.P2);
  const auto c1 = cuts_for(in.P1, hi1);
  const auto c2 = cuts_for(in.P2, hi2);
  QuadSpec spec{1e-9};
  auto outer = [&](double s1) {
    const double u1 = s1 * (2.0 - s1);
    const double e1 = -in.P1 * u1 - in.Q1 * s1 * s1;
    auto inner = [&](double s2) {
      const double u2 = s2 * (2.0 - s2);
      const double x = 2.0 * in.x0 * std::sqrt(u1 * u2);
      return std::exp(e1 - in.P2 * u2 - in.Q2 * s2 * s2 + x) * bessel_i0_scaled(x);
    };
    return integrate_1d<double>(inner, 0.0, hi2, spec, c2).value;
  };
  return integrate_1d<double>(outer, 0.0, hi1, spec, c1).value;
}

AngularValue angular_direct_value(const AngularInputs& in) {
  AngularValue out;
  out.value = angular_direct(in);
  out.direct = true;
  return out;
}

template <std::size_t N>
AngularValue angular_series_n(const AngularInputs& in, double r) {
  const auto m1 = polar_moments<N>(in.P1, in.Q1);
  const auto m2 = polar_moments<N>(in.P2, in.Q2);
  AngularValue out;
  double rn = 1.0;
  double last = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    last = rn * m1[n] * m2[n];
    out.value += last;
    ++out.terms;
    rn *= r;
    if (rn == 0.0) break;
  }
  if (std::abs(last) > 1e-12 * std::abs(out.value)) return angular_direct_value(in);
  return out;
}

AngularValue angular(const AngularInputs& in, AngularRoute route) {
  if (route == AngularRoute::Direct) return angular_direct_value(in);
  if (in.x0 == 0.0) {
    const auto m1 = polar_moments<1>(in.P1, in.Q1);
    const auto m2 = polar_moments<1>(in.P2, in.Q2);
    return {m1[0] * m2[0], 1, false};
  }
  // term ratio of the series; (x0^2 / P1 P2)^n times moments of order one
  const double r = in.x0 * in.x0 / (in.P1 * in.P2);
  if (r < 0.01) return angular_series_n<8>(in, r);
  if (r < 0.12) return angular_series_n<16>(in, r);
  if (r < 0.25) return angular_series_n<24>(in, r);
  return angular_direct_value(in);
}

AngularInputs angular_inputs(const CollinearSetup& s, double k1, double k2) {
  const double w2 = s.src.w * s.src.w;
  const double wz2 = s.src.w_z * s.src.w_z;
  const double a2 = s.det.a * s.det.a;
  const double k1s = k1 * k1, k2s = k2 * k2;
  const double K2 = k1s + k2s;
  const double S = a2 * w2 * w2 / (s.z1 * s.z1 + a2 * w2 * K2) + a2 * w2 * w2 / (s.z2 * s.z2 + a2 * w2 * K2);
  return {(w2 - 0.5 * S * k1s) * k1s, wz2 * k1s, (w2 - 0.5 * S * k2s) * k2s, wz2 * k2s, 0.5 * S * k1s * k2s};
}

// int k^2 N f^2 Theta(k) dk at a = 0: the size of the Numeric integrals
double numeric_scale(const CollinearSetup& s, const KWindow& win, double shift) {
  const double w2 = s.src.w * s.src.w;
  const double wz2 = s.src.w_z * s.src.w_z;
  QuadSpec spec{1e-6};
  auto g = [&](double k) {
    if (!(k > 0.0)) return 0.0;
    return weight_k2(k, s, shift) * theta_integral_direct({w2 * k * k, wz2 * k * k}, spec);
  };
  return integrate_1d<double>(g, win.lo, win.hi, spec, win.breakpoints).value;
}

double flat_scale(const CollinearSetup& s, const KWindow& win, double shift) {
  QuadSpec spec{1e-6};
  auto g = [&](double k) { return weight_flat(k, s, shift); };
  return integrate_1d<double>(g, win.lo, win.hi, spec, win.breakpoints).value;
}

}  // namespace

void CollinearSetup::validate() const {
  src.validate();
  beam.validate();
  det.validate();
  antibunch::validate(Geometry{geometry::Collinear{z1, z2}});
}

std::vector<std::string> CollinearSetup::warnings(double ratio) const {
  auto out = far_field_warnings(Geometry{geometry::Collinear{z1, z2}}, src, det, ratio);
  for (double z : {z1, z2}) {
    const double r = large_p_ratio(*this, z);
    if (r < 25.0) {
      out.push_back("large-p condition weak at zbar = " + std::to_string(z) + ": ratio " + std::to_string(r) +
                    " < 25");
    }
  }
  return out;
}

double exchange_sign(Statistics s) {
  switch (s) {
    case Statistics::Fermion: return -1.0;
    case Statistics::Boson: return 1.0;
    case Statistics::Classical: return 0.0;
  }
  return 0.0;
}

double large_p_ratio(const CollinearSetup& s, double zbar) {
  const double wk2 = s.src.w * s.src.w * s.beam.k0 * s.beam.k0;
  const double p = wk2 / (1.0 + 2.0 * s.det.a * s.det.a * wk2 / (zbar * zbar));
  return p / std::max(1.0, s.src.w_z * s.beam.k0);
}

namespace {

// rescale: drop a common factor exp(log_peak) per spectrum (exp(2 log_peak)
// for the interference term); used where only ratios matter.
CorrResult rho1_impl(const CollinearSetup& s, double zbar, Method method, const CollinearOptions& opts,
                     bool rescale) {
  s.validate();
  if (!(zbar > 0.0)) throw ParameterError("rho1: zbar must be > 0");
  const double m = s.src.mass;
  const double w2 = s.src.w * s.src.w;
  const double lam2 = s.src.lambda * s.src.lambda;
  const double z2 = zbar * zbar;

  CorrResult out;
  out.method = method;

  if (method == Method::Analytic) {
    require_monochromatized(s);
    const double n0 = rescale ? 1.0 : occupation(omega(s.beam.k0, s.src), s.src);
    out.value = lam2 * m * m * std::sqrt(kPiOverE) * n0 /
                (std::pow(kTwoPi, 5) * w2 * z2 * s.beam.dk_perp * s.beam.dk_perp);
    return out;
  }

  const QuadSpec& spec = method == Method::Numeric ? opts.numeric : opts.gauss;
  spec.validate();
  const KWindow win = spectrum_window(s.src, s.beam, spec);
  const double shift = rescale ? win.log_peak : 0.0;
  const double a2 = s.det.a * s.det.a;
  const double wz2 = s.src.w_z * s.src.w_z;

  QuadResult<double> r;
  double pref = 0.0;
  if (method == Method::GaussianApprox) {
    // 2 m^2 / ((2 pi)^4 w^2 z^2) int dk N f^2 p Theta_saddle(p, q)
    pref = lam2 * 2.0 * m * m / (std::pow(kTwoPi, 4) * w2 * z2);
    auto g = [&](double k) {
      if (!(k > 0.0)) return 0.0;
      const SaddleParams sp = saddle_params(k, s.src.w, s.src.w_z, s.det.a, zbar);
      return weight_flat(k, s, shift) * sp.p * theta_integral(sp, ThetaMode::Saddle);
    };
    QuadSpec outer = spec;
    outer.abs_tol = std::max(spec.abs_tol, 1e-3 * spec.rel_tol * flat_scale(s, win, shift));
    r = integrate_1d<double>(g, win.lo, win.hi, outer, win.breakpoints);
  } else {
    pref = lam2 * 2.0 * m * m / (std::pow(kTwoPi, 4) * z2);
    QuadSpec inner{std::min(1e-10, 0.01 * spec.rel_tol)};
    auto g = [&](double k) {
      if (!(k > 0.0)) return 0.0;
      const double k2 = k * k;
      const double lateral = 1.0 + 2.0 * a2 * w2 * k2 / z2;
      const double theta = theta_integral_direct({w2 * k2 / lateral, wz2 * k2}, inner);
      return weight_k2(k, s, shift) / lateral * theta;
    };
    QuadSpec outer = spec;
    outer.abs_tol = std::max(spec.abs_tol, 1e-3 * spec.rel_tol * numeric_scale(s, win, shift));
    r = integrate_1d<double>(g, win.lo, win.hi, outer, win.breakpoints);
  }
  out.value = pref * r.value;
  out.abs_error = pref * r.abs_error;
  out.meta.evaluations = r.evaluations;
  return out;
}

CorrResult interference_impl(const CollinearSetup& s, Method method, const CollinearOptions& opts, bool rescale) {
  s.validate();
  const double m = s.src.mass;
  const double w2 = s.src.w * s.src.w;
  const double a2 = s.det.a * s.det.a;
  const double d2 = s.det.d * s.det.d;
  const double lam4 = std::pow(s.src.lambda, 4);
  const double zz = s.z1 * s.z1 * s.z2 * s.z2;
  const double dz = s.z1 - s.z2;
  const double m4 = std::pow(m, 4);

  CorrResult out;
  out.method = method;

  if (method == Method::Analytic) {
    require_monochromatized(s);
    const double n0 = rescale ? 1.0 : occupation(omega(s.beam.k0, s.src), s.src);
    const double k0 = s.beam.k0;
    const double dkz2 = s.beam.dk_z * s.beam.dk_z;
    const double X = a2 * w2 * k0 * k0 * (1.0 / (s.z1 * s.z1) + 1.0 / (s.z2 * s.z2));
    const double L = 1.0 / std::sqrt(1.0 + 4.0 * dkz2 * d2);
    const double sep = std::exp(-dz * dz / (1.0 / dkz2 + 4.0 * d2));
    out.value = lam4 * m4 * kPiOverE * n0 * n0 /
                (2.0 * std::pow(kTwoPi, 10) * w2 * w2 * zz * std::pow(s.beam.dk_perp, 4)) / (1.0 + X) * L * sep;
    return out;
  }

  const QuadSpec& spec = method == Method::Numeric ? opts.numeric : opts.gauss;
  spec.validate();
  const KWindow win = spectrum_window(s.src, s.beam, spec);
  const double shift = rescale ? win.log_peak : 0.0;

  if (method == Method::GaussianApprox) {
    const double pref = lam4 * m4 * kPiOverE / (2.0 * std::pow(kTwoPi, 8) * w2 * w2 * zz);
    const double lat = a2 * w2 * (0.5 / (s.z1 * s.z1) + 0.5 / (s.z2 * s.z2));
    auto g = [&](double k1, double k2) {
      const double amp = weight_flat(k1, s, shift) * weight_flat(k2, s, shift) / (1.0 + lat * (k1 * k1 + k2 * k2)) *
                         std::exp(-(k1 - k2) * (k1 - k2) * d2);
      const double ph = (k1 - k2) * dz;
      return std::complex<double>(amp * std::cos(ph), -amp * std::sin(ph));
    };
    const double scale = std::pow(flat_scale(s, win, shift), 2);
    const auto r = integrate_kk<std::complex<double>>(g, win, spec, scale);
    out.value = pref * r.value.real();
    out.abs_error = pref * r.abs_error;
    out.meta.imag_residual = pref * r.value.imag();
    out.meta.evaluations = r.evaluations;
    const double allowed = std::max({spec.rel_tol * std::abs(out.value), 10.0 * out.abs_error,
                                     1e-12 * pref * scale});
    if (std::abs(out.meta.imag_residual) > allowed)
      throw SymmetryError("interference: imaginary part " + std::to_string(out.meta.imag_residual) +
                          " exceeds " + std::to_string(allowed));
    return out;
  }

  // Numeric, exchange-symmetrized real integrand
  const double pref = lam4 * 2.0 * m4 / (std::pow(kTwoPi, 8) * zz);
  int max_terms = 0;
  int fallbacks = 0;
  auto g = [&](double k1, double k2) {
    if (!(k1 > 0.0) || !(k2 > 0.0)) return 0.0;
    const double K2 = k1 * k1 + k2 * k2;
    const double den1 = 1.0 + a2 * w2 * K2 / (s.z1 * s.z1);
    const double den2 = 1.0 + a2 * w2 * K2 / (s.z2 * s.z2);
    const double amp = weight_k2(k1, s, shift) * weight_k2(k2, s, shift) / (den1 * den2) * std::exp(-(k1 - k2) * (k1 - k2) * d2);
    if (amp == 0.0) return 0.0;
    const AngularValue ang = angular(angular_inputs(s, k1, k2), opts.route);
    max_terms = std::max(max_terms, ang.terms);
    if (ang.direct && opts.route == AngularRoute::BesselSeries) ++fallbacks;
    return amp * std::cos((k1 - k2) * dz) * ang.value;
  };
  const double scale = std::pow(numeric_scale(s, win, shift), 2);
  const auto r = integrate_kk<double>(g, win, spec, scale);
  out.value = pref * r.value;
  out.abs_error = pref * r.abs_error;
  out.meta.evaluations = r.evaluations;
  out.meta.bessel_terms = max_terms;
  out.meta.direct_fallbacks = fallbacks;
  return out;
}

}  // namespace

CorrResult rho1(const CollinearSetup& s, double zbar, Method method, const CollinearOptions& opts) {
  return rho1_impl(s, zbar, method, opts, false);
}

CorrResult interference(const CollinearSetup& s, Method method, const CollinearOptions& opts) {
  return interference_impl(s, method, opts, false);
}

AngularValue interference_angular(const CollinearSetup& s, double k1, double k2, AngularRoute route) {
  return angular(angular_inputs(s, k1, k2), route);
}

CorrResult c_normalized(const CollinearSetup& s, Method method, const CollinearOptions& opts) {
  s.validate();
  CorrResult out;
  out.method = method;
  out.meta.warnings = s.warnings();
  const double sign = exchange_sign(s.src.statistics);
  if (sign == 0.0) {
    out.value = 1.0;
    return out;
  }
  const CorrResult r1 = rho1_impl(s, s.z1, method, opts, true);
  const CorrResult r2 = s.z1 == s.z2 ? r1 : rho1_impl(s, s.z2, method, opts, true);
  const CorrResult in = interference_impl(s, method, opts, true);
  if (!(r1.value > 0.0) || !(r2.value > 0.0))
    throw DomainError("c_normalized: one-particle density vanishes (empty momentum band)");

  const double ratio = in.value / (r1.value * r2.value);
  out.value = 1.0 + sign * ratio;
  const double rel = (in.value != 0.0 ? in.abs_error / std::abs(in.value) : 0.0) + r1.abs_error / r1.value +
                     r2.abs_error / r2.value;
  out.abs_error = std::abs(ratio) * rel + (in.value == 0.0 ? in.abs_error / (r1.value * r2.value) : 0.0);
  out.meta.evaluations = in.meta.evaluations + r1.meta.evaluations + r2.meta.evaluations;
  out.meta.bessel_terms = in.meta.bessel_terms;
  out.meta.direct_fallbacks = in.meta.direct_fallbacks;
  out.meta.imag_residual = in.meta.imag_residual / (r1.value * r2.value);
  return out;
}

double c_analytic(const CollinearSetup& s) {
  s.validate();
  require_monochromatized(s);
  const double sign = exchange_sign(s.src.statistics);
  const double w2 = s.src.w * s.src.w;
  const double k0 = s.beam.k0;
  const double dkz2 = s.beam.dk_z * s.beam.dk_z;
  const double a2 = s.det.a * s.det.a;
  const double d2 = s.det.d * s.det.d;
  const double dz = s.z1 - s.z2;
  const double X = a2 * w2 * k0 * k0 * (1.0 / (s.z1 * s.z1) + 1.0 / (s.z2 * s.z2));
  return 1.0 + sign * 0.5 / (1.0 + X) / std::sqrt(1.0 + 4.0 * dkz2 * d2) *
                   std::exp(-dz * dz / (1.0 / dkz2 + 4.0 * d2));
}

CoherenceLengths coherence_lengths(const CollinearSetup& s) {
  s.validate();
  const double zeff = std::sqrt(2.0 / (1.0 / (s.z1 * s.z1) + 1.0 / (s.z2 * s.z2)));
  return {zeff / (std::numbers::sqrt2 * s.src.w * s.beam.k0), 0.5 / s.beam.dk_z};
}

DipShape dip_shape(const CollinearSetup& s, Method method, const CollinearOptions& opts) {
  DipShape out;
  auto excess = [&](double sep) {
    CollinearSetup t = s;
    t.z1 = s.z2 + sep;
    ++out.evaluations;
    return std::abs(1.0 - c_normalized(t, method, opts).value);
  };
  out.depth = excess(0.0);
  if (out.depth == 0.0) return out;
  const double target = out.depth / std::numbers::e;
  auto g = [&](double sep) { return excess(sep) - target; };

  // walk outwards to the first crossing, then refine
  const double d2 = s.det.d * s.det.d;
  const double h = 0.25 * std::sqrt(1.0 / (s.beam.dk_z * s.beam.dk_z) + 4.0 * d2);
  double lo = 0.0, glo = out.depth - target;
  double hi = h, ghi = g(hi);
  for (int i = 0; ghi > 0.0; ++i) {
    if (i > 60) throw ConvergenceError("dip_shape: no half-width crossing found", hi, h);
    lo = hi;
    glo = ghi;
    hi += h;
    ghi = g(hi);
  }
  boost::uintmax_t iters = 60;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(30), iters);
  out.half_width = 0.5 * (root.first + root.second);
  return out;
}

double lambda_factor(const Vec3& k1, const Vec3& k2, const CollinearSetup& s) {
  const double w2 = s.src.w * s.src.w;
  const double wz2 = s.src.w_z * s.src.w_z;
  const double n1 = k1.norm(), n2 = k2.norm();
  const double K2 = n1 * n1 + n2 * n2;
  return 1.0 + 1.0 / (2.0 * w2 * s.beam.dk_perp * s.beam.dk_perp) -
         1.0 / (2.0 * w2 * s.beam.dk_z * s.beam.dk_z) * (1.0 - s.beam.k0 * (n1 + n2) / K2) -
         wz2 / w2 * (1.0 - (n1 * k1.z + n2 * k2.z) / K2);
}

std::complex<double> corrected_denominator(const Vec3& k1, const Vec3& k2, double zbar,
                                           const CollinearSetup& s) {
  const double w2 = s.src.w * s.src.w;
  const double a2 = s.det.a * s.det.a;
  const double d2 = s.det.d * s.det.d;
  const double n1 = k1.norm(), n2 = k2.norm();
  const double K2 = n1 * n1 + n2 * n2;
  const double dk = n1 - n2;
  const std::complex<double> i(0.0, 1.0);
  return 1.0 + a2 * w2 * K2 / (zbar * zbar) * (lambda_factor(k1, k2, s) + 2.0 / (w2 * K2)) -
         3.0 * d2 / (zbar * zbar) + i * dk * a2 / (zbar - i * dk * d2);
}

ConsistencyReport consistency_corrections(const CollinearSetup& s) {
  s.validate();
  require_monochromatized(s);
  const double w2 = s.src.w * s.src.w;
  const double k0 = s.beam.k0;
  const double a2 = s.det.a * s.det.a;
  const double dkp2 = s.beam.dk_perp * s.beam.dk_perp;
  const double x1 = a2 * k0 * k0 / (dkp2 * s.z1 * s.z1);
  const double x2 = a2 * k0 * k0 / (dkp2 * s.z2 * s.z2);
  const double X = a2 * w2 * k0 * k0 * (1.0 / (s.z1 * s.z1) + 1.0 / (s.z2 * s.z2));

  ConsistencyReport rep;
  rep.rho1_divisor_1 = 1.0 + x1;
  rep.rho1_divisor_2 = 1.0 + x2;
  rep.denominator_uncorrected = 1.0 + X;
  rep.denominator_literal = 1.0 + X * (1.0 + 1.0 / (w2 * dkp2));
  rep.denominator_consistent = (1.0 + X) * (1.0 + x1) * (1.0 + x2);
  rep.c_uncorrected = c_analytic(s);

  // C = 1 + sign * (I / (rho rho)); the dip term scales as divisors / denominator
  const double dip = rep.c_uncorrected - 1.0;
  const double divisors = rep.rho1_divisor_1 * rep.rho1_divisor_2;
  rep.c_corrected_literal = 1.0 + dip * rep.denominator_uncorrected * divisors / rep.denominator_literal;
  rep.c_corrected_consistent = 1.0 + dip * rep.denominator_uncorrected * divisors / rep.denominator_consistent;
  rep.literal_deviation = std::abs(rep.c_corrected_literal - rep.c_uncorrected);
  rep.consistent_deviation = std::abs(rep.c_corrected_consistent - rep.c_uncorrected);
  return rep;
}

}  // namespace antibunch
