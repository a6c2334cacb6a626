#include "antibunch/offaxis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "antibunch/collinear.hpp"
#include "antibunch/dists.hpp"
#include "antibunch/errors.hpp"

namespace antibunch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check(const SourceSpec& src, const BeamSpec& beam, const DetectorSpec& det) {
  src.validate();
  beam.validate();
  det.validate();
}

double dip_term(const OffAxisAux& D, double exponent) {
  return D.d1 / (2.0 * std::sqrt(D.d2 * D.d3)) * std::exp(-exponent);
}

}  // namespace

OffAxisAux d_funcs(double theta_d, const SourceSpec& src, const BeamSpec& beam, const DetectorSpec& det) {
  const double s = std::sin(theta_d);
  const double c = std::cos(theta_d);
  const double kz2 = beam.dk_z * beam.dk_z;
  const double kp2 = beam.dk_perp * beam.dk_perp;
  const double kk = kz2 * kp2;
  OffAxisAux D;
  D.d1 = kz2 * s * s + kp2 * c * c + 2.0 * src.w_z * src.w_z * kk * (1.0 - c) * (1.0 - c);
  D.d2 = D.d1 + 2.0 * src.w * src.w * kk * s * s;
  D.d3 = D.d2 + 4.0 * det.a * det.a * kk * s * s + 4.0 * det.d * det.d * kk * c * c;
  return D;
}

std::vector<std::string> offaxis_warnings(double theta_d, double r1, double r2, const SourceSpec& src,
                                          const BeamSpec& beam, const DetectorSpec& det) {
  std::vector<std::string> out =
      far_field_warnings(Geometry{geometry::OffAxis{theta_d, 0.0, r1, r2}}, src, det);
  if (src.w_z > 0.0 && src.w / src.w_z < 10.0) out.emplace_back("off-axis: w/w_z below 10");
  if (src.w * beam.k0 < 10.0) out.emplace_back("off-axis: w k0 below 10");
  if (!beam.well_monochromatized()) out.emplace_back("off-axis: beam not well monochromatized");
  return out;
}

CorrResult c_offaxis(double theta_d, double r1, double r2, const SourceSpec& src, const BeamSpec& beam,
                     const DetectorSpec& det) {
  check(src, beam, det);
  validate(Geometry{geometry::OffAxis{theta_d, 0.0, r1, r2}});
  const OffAxisAux D = d_funcs(theta_d, src, beam, det);
  const double s2t = std::sin(2.0 * theta_d);
  const double lateral = src.w * src.w * beam.k0 * beam.k0 * std::pow(beam.dk_perp, 4) * s2t * s2t /
                         (2.0 * D.d1 * D.d2);
  const double sep = beam.dk_z * beam.dk_z * beam.dk_perp * beam.dk_perp * (r1 - r2) * (r1 - r2) / D.d3;
  CorrResult out;
  out.method = Method::Analytic;
  out.value = 1.0 + exchange_sign(src.statistics) * dip_term(D, lateral + sep);
  out.meta.warnings = offaxis_warnings(theta_d, r1, r2, src, beam, det);
  return out;
}

double c_offaxis_on_axis(double z1, double z2, const SourceSpec& src, const BeamSpec& beam,
                         const DetectorSpec& det) {
  check(src, beam, det);
  const double kz2 = beam.dk_z * beam.dk_z;
  const double d2 = det.d * det.d;
  return 1.0 + exchange_sign(src.statistics) * 0.5 / std::sqrt(1.0 + 4.0 * kz2 * d2) *
                   std::exp(-(z1 - z2) * (z1 - z2) / (1.0 / kz2 + 4.0 * d2));
}

OffAxisAux d_tilde(double x, double y, double z, const SourceSpec& src, const BeamSpec& beam,
                   const DetectorSpec& det) {
  const double rho2 = x * x + y * y;
  const double r = std::sqrt(rho2 + z * z);
  const double kz2 = beam.dk_z * beam.dk_z;
  const double kp2 = beam.dk_perp * beam.dk_perp;
  const double kk = kz2 * kp2;
  OffAxisAux D;
  D.d1 = kz2 * rho2 + kp2 * z * z + 2.0 * src.w_z * src.w_z * kk * (r - z) * (r - z);
  D.d2 = D.d1 + 2.0 * src.w * src.w * kk * rho2;
  D.d3 = D.d2 + 4.0 * kk * (det.a * det.a * rho2 + det.d * det.d * z * z);
  return D;
}

CorrResult c_symmetric_pair(double x, double y, double z, const SourceSpec& src, const BeamSpec& beam,
                            const DetectorSpec& det) {
  check(src, beam, det);
  validate(Geometry{geometry::SymmetricPair{x, y, z}});
  const OffAxisAux D = d_tilde(x, y, z, src, beam, det);
  const double rho2 = x * x + y * y;
  const double lateral =
      2.0 * src.w * src.w * beam.k0 * beam.k0 * std::pow(beam.dk_perp, 4) * rho2 * z * z / (D.d1 * D.d2);
  CorrResult out;
  out.method = Method::Analytic;
  out.value = 1.0 + exchange_sign(src.statistics) * dip_term(D, lateral);
  const double r = std::sqrt(rho2 + z * z);
  out.meta.warnings = offaxis_warnings(std::acos(z / r), r, r, src, beam, det);
  return out;
}

double log_mono_f_theta(double k, double theta_d, const BeamSpec& beam) {
  return log_mono_f(k * unit_vector(theta_d, 0.0), beam);
}

double mono_f_theta_peak(double theta_d, const BeamSpec& beam) {
  const double s = std::sin(theta_d);
  const double c = std::cos(theta_d);
  const double kz2 = beam.dk_z * beam.dk_z;
  const double kp2 = beam.dk_perp * beam.dk_perp;
  return beam.k0 * c * kp2 / (kz2 * s * s + kp2 * c * c);
}

MomentumOracle momentum_oracle(double theta_d, double r1, double r2, const SourceSpec& src,
                                  const BeamSpec& beam, const DetectorSpec& det, const QuadSpec& quad) {
  check(src, beam, det);
  quad.validate();
  validate(Geometry{geometry::OffAxis{theta_d, 0.0, r1, r2}});

  const double s = std::sin(theta_d);
  const double c = std::cos(theta_d);
  const double w2 = src.w * src.w;
  const double depth = src.w_z * src.w_z * (1.0 - c) * (1.0 - c);
  const double lateral = w2 * s * s;
  const double res2 = det.a * det.a * s * s + det.d * det.d * c * c;
  const double m = src.mass;
  const bool boson = src.statistics == Statistics::Boson;

  // log of N f^2(k, theta) exp(-w_z^2 k^2 (1 - cos)^2)
  auto h = [&](double k) {
    if (boson && !(omega(k, src) > src.mu)) return -std::numeric_limits<double>::infinity();
    return std::log(occupation(omega(k, src), src)) + 2.0 * log_mono_f_theta(k, theta_d, beam) - depth * k * k;
  };

  // window from a scan of both marginals
  const OffAxisAux D = d_funcs(theta_d, src, beam, DetectorSpec{});
  const double sigma = beam.dk_z * beam.dk_perp / std::sqrt(D.d1);
  const double kstar = mono_f_theta_peak(theta_d, beam);
  const double scan_lo = std::max(0.0, kstar - 60.0 * sigma);
  const double scan_hi = kstar + 60.0 * sigma;
  constexpr int kPoints = 4001;
  const double step = (scan_hi - scan_lo) / (kPoints - 1);
  double shift = -std::numeric_limits<double>::infinity();
  std::vector<double> hv(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    hv[i] = h(scan_lo + i * step);
    shift = std::max(shift, hv[i]);
  }
  if (!std::isfinite(shift)) throw DomainError("momentum_oracle: empty momentum band");
  double lo = scan_hi, hi = scan_lo;
  for (int i = 0; i < kPoints; ++i) {
    const double k = scan_lo + i * step;
    const double hb = hv[i] - lateral * k * k;
    if (hv[i] > shift - 46.0 || hb > shift - 46.0 - lateral * kstar * kstar) {
      lo = std::min(lo, std::max(scan_lo, k - step));
      hi = std::max(hi, std::min(scan_hi, k + step));
    }
  }
  std::vector<double> cuts;
  if (kstar > lo && kstar < hi) cuts.push_back(kstar);
  if (src.statistics == Statistics::Fermion && src.mu > 0.0) {
    const double kf = std::sqrt(2.0 * m * src.mu);
    if (kf > lo && kf < hi) cuts.push_back(kf);
  }
  std::sort(cuts.begin(), cuts.end());

  auto e = [&](double k) { return std::exp(h(k) - shift); };
  const auto r_int = integrate_1d<double>(e, lo, hi, quad, cuts);

  const double dr = r1 - r2;
  auto g = [&](double k1, double k2) {
    const double amp = e(k1) * e(k2) * std::exp(-(k1 - k2) * (k1 - k2) * res2 - (k1 * k1 + k2 * k2) * lateral);
    const double ph = (k1 - k2) * dr;
    return std::complex<double>(amp * std::cos(ph), -amp * std::sin(ph));
  };
  const auto i_int = integrate_square<std::complex<double>>(g, lo, hi, cuts, quad, r_int.value * r_int.value);

  const double lam2 = src.lambda * src.lambda;
  const double rho_pref = lam2 * m * m / (std::pow(kTwoPi, 4) * w2);
  const double int_pref = lam2 * lam2 * std::pow(m, 4) / (2.0 * std::pow(kTwoPi, 8) * w2 * w2 * r1 * r1 * r2 * r2);

  MomentumOracle out;
  out.rho1_r1 = rho_pref * r_int.value / (r1 * r1);
  out.rho1_r2 = rho_pref * r_int.value / (r2 * r2);
  out.interference = int_pref * i_int.value.real();
  out.imag_residual = int_pref * i_int.value.imag();
  const double ratio = out.interference / (out.rho1_r1 * out.rho1_r2);
  out.c = 1.0 + exchange_sign(src.statistics) * ratio;
  out.abs_error = std::abs(ratio) * (2.0 * r_int.abs_error / r_int.value) +
                  int_pref * i_int.abs_error / (out.rho1_r1 * out.rho1_r2);
  return out;
}

}  // namespace antibunch
