#pragma once

// Form factors and occupation numbers.
//
// Gaussian emitting window g with widths (w, w, w_z), its Fourier transform
// g~, the Gaussian monochromator f centred on k0 = (0, 0, k0), the Gaussian
// detector resolution R with widths (a, a, d), and the thermal occupation
// N(omega). Exponents are assembled in log space and exponentiated once.

#include <cmath>
#include <vector>

#include "antibunch/params.hpp"
#include "antibunch/quadrature.hpp"

namespace antibunch {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  double perp2() const { return x * x + y * y; }
  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

// Unit vector with polar angle theta and azimuth phi.
Vec3 unit_vector(double theta, double phi);

inline double omega(double k, const SourceSpec& src) { return 0.5 * k * k / src.mass; }

// Fermion 1/(e^x + 1), Boson 1/(e^x - 1), Classical e^-x with x = beta (omega - mu).
// Throws DomainError for Boson statistics with omega <= mu.
double occupation(double omega, const SourceSpec& src);

// Gaussian window density, normalized over R^3. Requires w_z > 0 (the
// w_z = 0 window is a delta in z); throws DomainError otherwise.
double window_g(const Vec3& r, const SourceSpec& src);

// (2 pi)^-3 exp(-dk . W^2 dk / 2)
double log_window_g_tilde(const Vec3& dk, const SourceSpec& src);
inline double window_g_tilde(const Vec3& dk, const SourceSpec& src) {
  return std::exp(log_window_g_tilde(dk, src));
}

// [(2 pi)^3 dk_perp^4 dk_z^2]^(-1/4) exp(-(k - k0) . dK^-2 (k - k0) / 4), so f^2 is a
// normalized Gaussian density in k.
double log_mono_f(const Vec3& k, const BeamSpec& beam);
inline double mono_f(const Vec3& k, const BeamSpec& beam) { return std::exp(log_mono_f(k, beam)); }
inline double mono_f2(const Vec3& k, const BeamSpec& beam) { return std::exp(2.0 * log_mono_f(k, beam)); }

// f^2(k z^) as a function of the scalar k.
inline double mono_f2_axis(double k, const BeamSpec& beam) { return mono_f2(Vec3{0.0, 0.0, k}, beam); }

// Number of nondegenerate directions of the resolution ellipsoid: 3 when
// a, d > 0, 1 when only d > 0, 2 when only a > 0, 0 for a point detector.
int resolution_dims(const DetectorSpec& det);

// Resolution density centred on rbar, normalized over R^3. Throws
// DomainError when a or d is zero (use resolution_R_reduced).
double resolution_R(const Vec3& r, const Vec3& rbar, const DetectorSpec& det);

// Density over the nondegenerate directions only; a degenerate direction is a
// delta function and is dropped (returns 1 when a = d = 0).
double resolution_R_reduced(const Vec3& r, const Vec3& rbar, const DetectorSpec& det);

// f(k') g~(k' - k) theta(k_z), with theta(0) = 0.
double emission_T(const Vec3& kprime, const Vec3& k, const SourceSpec& src, const BeamSpec& beam);

// N(omega_k) f^2(k z^)
double effective_spectrum(double k, const SourceSpec& src, const BeamSpec& beam);
double log_effective_spectrum(double k, const SourceSpec& src, const BeamSpec& beam);

// Momentum range carrying the spectrum: k0 +- k_window_sigmas dk_z (clipped at
// 0), widened to every k where N f^2 exceeds rel_floor times its peak.
// `breakpoints` lists the Fermi momentum when it falls inside, and k0.
struct KWindow {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> breakpoints;
  double log_peak = 0.0;  // max of log(N f^2) over the scan
};

KWindow spectrum_window(const SourceSpec& src, const BeamSpec& beam, const QuadSpec& quad,
                        double rel_floor = 1e-10);

// Integrals of g, f^2 and R over R^3 (each should be 1), by 3D quadrature
// over +-12 widths. R uses a = d = 1 when det is degenerate.
struct Normalizations {
  double g = 0.0;
  double f2 = 0.0;
  double R = 0.0;
  double max_abs_error = 0.0;
};
Normalizations normalizations(const SourceSpec& src, const BeamSpec& beam, const DetectorSpec& det,
                              const QuadSpec& quad = QuadSpec{1e-11});

}  // namespace antibunch
