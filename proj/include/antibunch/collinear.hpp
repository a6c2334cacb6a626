#pragma once

// One- and two-particle distributions for two detectors on the beam axis at
// distances z1 and z2, and the normalized correlator
//
//   C = 1 -+ I / (rho1(z1) rho1(z2))     (- fermions, + bosons).
//
// Three evaluation methods:
//   Numeric         momentum integrals with the polar-angle integrals done
//                   by quadrature (1D k x theta for rho1, 2D k1 x k2 with the
//                   azimuthal Bessel function resolved for I).
//   GaussianApprox  polar integrals replaced by their saddle-point value;
//                   the momentum integrals, including N(omega_k), remain.
//   Analytic        closed form for a well-monochromatized beam with N flat
//                   over the window.
//
// Classical statistics has no exchange term, so C = 1 identically.

#include <complex>
#include <string>
#include <vector>

#include "antibunch/dists.hpp"
#include "antibunch/params.hpp"
#include "antibunch/quadrature.hpp"
#include "antibunch/result.hpp"

namespace antibunch {

struct CollinearSetup {
  SourceSpec src;
  BeamSpec beam;
  DetectorSpec det;
  double z1 = 160.0;
  double z2 = 160.0;

  void validate() const;
  // Far-field and large-p condition warnings (empty when all hold).
  std::vector<std::string> warnings(double ratio = 20.0) const;
};

// Azimuthal/polar part of the Numeric interference integrand.
//   BesselSeries  I0 expanded in powers of its argument; every order needs a
//                 pair of 1D polar moments, all computed in one adaptive pass.
//   Direct        2D polar quadrature with the exponentially scaled I0.
// BesselSeries falls back to Direct where the series converges slowly.
enum class AngularRoute { BesselSeries, Direct };

struct CollinearOptions {
  QuadSpec gauss{1e-8};
  QuadSpec numeric{1e-6};
  AngularRoute route = AngularRoute::BesselSeries;
};

// +1 for bosons, -1 for fermions, 0 for classical particles.
double exchange_sign(Statistics s);

// w^2 k0^2 / (1 + 2 a^2 w^2 k0^2 / zbar^2) / max(1, w_z k0); the saddle-point
// treatment needs this >> 1.
double large_p_ratio(const CollinearSetup& s, double zbar);

CorrResult rho1(const CollinearSetup& s, double zbar, Method method, const CollinearOptions& opts = {});
CorrResult interference(const CollinearSetup& s, Method method, const CollinearOptions& opts = {});
CorrResult c_normalized(const CollinearSetup& s, Method method, const CollinearOptions& opts = {});

// Closed-form correlator, no quadrature.
double c_analytic(const CollinearSetup& s);

// Polar-angle factor of the Numeric interference integrand at (k1, k2),
// exposed for cross-checking the two routes.
struct AngularValue {
  double value = 0.0;
  int terms = 0;        // Bessel-series terms used (0 for Direct)
  bool direct = false;  // evaluated by the Direct route
};
AngularValue interference_angular(const CollinearSetup& s, double k1, double k2, AngularRoute route);

struct CoherenceLengths {
  double lateral = 0.0;       // zbar / (sqrt(2) w k0), zbar the rms-inverse of z1, z2
  double longitudinal = 0.0;  // 1 / (2 dk_z)
};
CoherenceLengths coherence_lengths(const CollinearSetup& s);

struct DipShape {
  double depth = 0.0;       // |1 - C(z2, z2)|
  double half_width = 0.0;  // separation z1 - z2 where |1 - C| = depth / e
  int evaluations = 0;
};

// Dip measured around the detector at z2; z1 is varied.
DipShape dip_shape(const CollinearSetup& s, Method method, const CollinearOptions& opts = {});

// Corrections from the exact resolution integral.
//
// Lambda(k1, k2) and the corrected denominator replacing
// 1 + a^2 w^2 (k1^2 + k2^2) / zbar^2 in the resolution factor.
double lambda_factor(const Vec3& k1, const Vec3& k2, const CollinearSetup& s);
std::complex<double> corrected_denominator(const Vec3& k1, const Vec3& k2, double zbar,
                                           const CollinearSetup& s);

// In the well-monochromatized limit rho1(z) is divided by 1 + x(z) with
// x = a^2 k0^2 / (dk_perp^2 z^2) and the interference denominator 1 + X,
// X = a^2 w^2 k0^2 (1/z1^2 + 1/z2^2), becomes 1 + X (1 + 1/(w^2 dk_perp^2)).
// Note X / (w^2 dk_perp^2) = x1 + x2, so that denominator is the first-order
// expansion of (1 + X)(1 + x1)(1 + x2).
struct ConsistencyReport {
  double rho1_divisor_1 = 1.0;
  double rho1_divisor_2 = 1.0;
  double denominator_uncorrected = 1.0;   // 1 + X
  double denominator_literal = 1.0;       // 1 + X (1 + 1/(w^2 dk_perp^2))
  double denominator_consistent = 1.0;    // (1 + X)(1 + x1)(1 + x2)
  double c_uncorrected = 0.0;             // c_analytic
  double c_corrected_literal = 0.0;
  double c_corrected_consistent = 0.0;
  double literal_deviation = 0.0;         // |c_corrected_literal - c_uncorrected|
  double consistent_deviation = 0.0;      // |c_corrected_consistent - c_uncorrected|
};
ConsistencyReport consistency_corrections(const CollinearSetup& s);

}  // namespace antibunch
