#pragma once

// Far-field one-particle wave function of a particle with source momentum k,
// observed at r = r rhat:
//
//   phi(r) ~ m sqrt(2 pi) theta(k_z) f(k rhat) g~(k rhat - k) e^{i k r} / (i r).
//
// radial_integral evaluates the 1D representation that precedes the
// asymptotic form,
//
//   -(1 / (sqrt(2 pi) r)) int dp p T(p rhat, k) e^{i p r} / (p^2/2m - omega_k - i eta),
//
// at finite eta. The pole contributes a factor exp(-m eta r / k) relative to
// eta -> 0, so radial_integral_check evaluates it at eta, 2 eta, 4 eta and
// extrapolates quadratically to eta = 0.

#include <array>
#include <complex>

#include "antibunch/dists.hpp"
#include "antibunch/params.hpp"
#include "antibunch/quadrature.hpp"

namespace antibunch {

std::complex<double> farfield_amplitude(const Vec3& k, const Vec3& rhat, double r, const SourceSpec& src,
                                        const BeamSpec& beam);

std::complex<double> radial_integral(const Vec3& k, const Vec3& rhat, double r, double eta,
                                     const SourceSpec& src, const BeamSpec& beam,
                                     const QuadSpec& quad = QuadSpec{1e-9});

struct RadialCheck {
  bool far_field = true;                 // r >= 10 w
  std::array<double, 3> etas{};          // 4 eta0, 2 eta0, eta0
  std::array<std::complex<double>, 3> values{};
  std::complex<double> extrapolated;
  std::complex<double> farfield;
  double rel_modulus_diff = 0.0;         // | |extrapolated| / |farfield| - 1 |
  bool converged = false;                // successive eta halvings shrink the change
};

// eta0 is chosen so that m eta0 r / k = bias (default 0.1).
RadialCheck radial_integral_check(const Vec3& k, const Vec3& rhat, double r, const SourceSpec& src,
                                  const BeamSpec& beam, double bias = 0.1,
                                  const QuadSpec& quad = QuadSpec{1e-9});

// Tilt angle alpha (rhat rotated away from k in a plane containing k) at
// which |phi|^2 falls to 1/e of its value along k. Roughly 1/(w |k|) when
// w dk_perp >> 1 and w_z is small.
double angular_half_width(const Vec3& k, const SourceSpec& src, const BeamSpec& beam);

}  // namespace antibunch
