#pragma once

// Polar-angle integral of the one-particle distribution and its saddle-point
// estimate.
//
// With p = w^2 k^2 / (1 + 2 a^2 w^2 k^2 / z^2) and q = w_z^2 k^2 the
// polar integral is
//
//   ∫_0^{π/2} dθ sinθ exp(-p sin²θ - q (1 - cosθ)²).
//
// Substituting p sin²θ + q (1-cosθ)² = (p+q) sin²Θ turns it into
//
//   (p+q) ∫_0^{π/2} dΘ exp(ln(sinΘ cosΘ) - (p+q) sin²Θ) / sqrt(p² cos²Θ + q² sin²Θ),
//
// whose exponent has a single stationary point Θ0 in (0, π/2). Laplace's
// method about Θ0 gives sqrt(π/e) / (2p) for p >> 1 and p² >> q.
//
// That estimate carries a constant factor sqrt(π/e) ≈ 1.075 relative to the
// exact large-p value 1/(2p). The factor is the same in the one-particle
// density and in the interference term and cancels in the normalized
// correlator.

#include <string>
#include <vector>

#include "antibunch/quadrature.hpp"

namespace antibunch {

struct SaddleParams {
  double p = 1.0;
  double q = 0.0;

  void validate() const;  // p > 0, q >= 0
};

// Collinear saddle parameters for wavenumber k at detector distance zbar.
SaddleParams saddle_params(double k, double w, double w_z, double a, double zbar);

struct SaddlePoint {
  double theta0 = 0.0;
  double sin2 = 0.5;    // sin²Θ0
  bool limit = false;   // p + q == 0: Θ0 = π/4 returned as the limiting value
};

SaddlePoint saddle_theta0(const SaddleParams& sp);

// d/dΘ [ln(sinΘ cosΘ) - (p+q) sin²Θ]; vanishes at Θ0.
double saddle_stationarity(const SaddleParams& sp, double theta);

enum class ThetaMode { Numeric, Saddle };

struct ThetaIntegralOptions {
  // multiply the saddle estimate by 1/sqrt(1 + q/(2p²))
  bool q_correction = false;
};

// Numeric: the transformed Θ-form above by adaptive quadrature.
// Saddle: sqrt(π/e)/(2p), optionally with the q correction.
double theta_integral(const SaddleParams& sp, ThetaMode mode, const QuadSpec& quad = {},
                      const ThetaIntegralOptions& opts = {});

// The same integral in the original θ form, substituted s = 1 - cosθ:
// ∫_0^1 ds exp(-p s(2-s) - q s²). Independent route used for cross-checks.
double theta_integral_direct(const SaddleParams& sp, const QuadSpec& quad = {});

// Saddle mode below its validity range (p < 10 or q >= p^2); empty for Numeric.
std::vector<std::string> theta_integral_warnings(const SaddleParams& sp, ThetaMode mode);

}  // namespace antibunch
