#pragma once

// Lowest-order correlator for detectors off the beam axis.
//
// Detectors at r1 = r1 (sin T cos P, sin T sin P, cos T) and
// r2 = r2 (-sin T cos P, -sin T sin P, cos T). With
//
//   D1 = dkz^2 sin^2 T + dkp^2 cos^2 T + 2 w_z^2 dkz^2 dkp^2 (1 - cos T)^2
//   D2 = D1 + 2 w^2 dkz^2 dkp^2 sin^2 T
//   D3 = D2 + 4 a^2 dkz^2 dkp^2 sin^2 T + 4 d^2 dkz^2 dkp^2 cos^2 T
//
// the correlator is
//
//   C = 1 -+ D1 / (2 sqrt(D2 D3))
//            exp(-w^2 k0^2 dkp^4 sin^2 2T / (2 D1 D2) - dkz^2 dkp^2 (r1 - r2)^2 / D3).
//
// The azimuth P drops out of every result.

#include <string>
#include <vector>

#include "antibunch/params.hpp"
#include "antibunch/quadrature.hpp"
#include "antibunch/result.hpp"

namespace antibunch {

struct OffAxisAux {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

OffAxisAux d_funcs(double theta_d, const SourceSpec& src, const BeamSpec& beam, const DetectorSpec& det);

// Applicability warnings: w >> w_z, w k0 >> 1 (ratios below 10), narrow beam,
// far field.
std::vector<std::string> offaxis_warnings(double theta_d, double r1, double r2, const SourceSpec& src,
                                          const BeamSpec& beam, const DetectorSpec& det);

// Closed form; statistics from src. Method tag Analytic, warnings in meta.
CorrResult c_offaxis(double theta_d, double r1, double r2, const SourceSpec& src, const BeamSpec& beam,
                     const DetectorSpec& det);

// The theta_d = 0 limit written out directly.
double c_offaxis_on_axis(double z1, double z2, const SourceSpec& src, const BeamSpec& beam,
                         const DetectorSpec& det);

// r^2 D_i expressed in the Cartesian detector coordinates (x, y, z).
OffAxisAux d_tilde(double x, double y, double z, const SourceSpec& src, const BeamSpec& beam,
                   const DetectorSpec& det);

// Detectors at (x, y, z) and (-x, -y, z).
CorrResult c_symmetric_pair(double x, double y, double z, const SourceSpec& src, const BeamSpec& beam,
                            const DetectorSpec& det);

// Monochromator amplitude along a direction at polar angle theta_d, as a
// function of the scalar k, and the k maximizing it.
double log_mono_f_theta(double k, double theta_d, const BeamSpec& beam);
double mono_f_theta_peak(double theta_d, const BeamSpec& beam);

// Momentum-integral oracle for c_offaxis: the one-particle density at r1 and
// r2 (1D quadrature) and the interference term (2D quadrature) with the
// polar/azimuthal integrals already done at leading order in 1/(w k).
// Overall constants common to numerator and denominator are kept, a common
// exponential scale is not (only the ratio is physical).
struct MomentumOracle {
  double rho1_r1 = 0.0;
  double rho1_r2 = 0.0;
  double interference = 0.0;
  double imag_residual = 0.0;
  double abs_error = 0.0;  // on c
  double c = 0.0;
};

MomentumOracle momentum_oracle(double theta_d, double r1, double r2, const SourceSpec& src,
                                  const BeamSpec& beam, const DetectorSpec& det,
                                  const QuadSpec& quad = QuadSpec{1e-8});

}  // namespace antibunch
