#pragma once

// Physical parameters and unit conventions.
//
// Internally everything is expressed in natural units hbar = m = 1 with
// lengths measured in units of the lateral source size w, so a SourceSpec in
// natural units always has w == 1 and mass == 1. Energies are then in units
// of hbar^2/(m w^2) and inverse temperatures in m w^2/hbar^2.
//
// The coupling lambda is carried for completeness. It scales the
// unnormalized one-particle density as lambda^2 and the interference term as
// lambda^4, and cancels from every normalized correlator.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace antibunch {

enum class Statistics { Fermion, Boson, Classical };

std::string_view to_string(Statistics s);
Statistics statistics_from_string(std::string_view name);

struct SourceSpec {
  double w = 1.0;     // lateral window size
  double w_z = 0.05;  // emitting-region depth
  double beta = 5.0;  // inverse temperature
  double mu = 0.0;    // chemical potential (Fermi level)
  double mass = 1.0;
  Statistics statistics = Statistics::Fermion;
  double lambda = 1.0;

  // Throws ParameterError when w <= 0, w_z < 0, beta <= 0 or mass <= 0.
  void validate() const;
};

struct BeamSpec {
  double k0 = 20.0;  // central momentum, beam along +z
  double dk_perp = 0.5;
  double dk_z = 0.5;
  // Closed-form paths require dk_z < mono_limit * k0.
  double mono_limit = 0.25;

  bool well_monochromatized() const { return dk_z < mono_limit * k0; }
  void validate() const;
};

struct DetectorSpec {
  double a = 0.0;  // lateral mouth
  double d = 0.0;  // longitudinal resolution

  void validate() const;
};

namespace geometry {

struct Collinear {
  double z1 = 160.0;
  double z2 = 160.0;
};

// r1 = r1 (sin T cos P, sin T sin P, cos T), r2 = r2 (-sin T cos P, -sin T sin P, cos T)
struct OffAxis {
  double theta_d = 0.0;
  double phi = 0.0;  // accepted for completeness; every result is independent of it
  double r1 = 160.0;
  double r2 = 160.0;
};

// r1 = (x, y, z), r2 = (-x, -y, z)
struct SymmetricPair {
  double x = 0.0;
  double y = 0.0;
  double z = 160.0;
};

}  // namespace geometry

using Geometry = std::variant<geometry::Collinear, geometry::OffAxis, geometry::SymmetricPair>;

void validate(const Geometry& g);

// Far-field sanity: every detector distance should exceed w, a and d by
// at least `ratio`. Returns human-readable warnings, empty when satisfied.
std::vector<std::string> far_field_warnings(const Geometry& g, const SourceSpec& src,
                                            const DetectorSpec& det, double ratio = 20.0);

struct NaturalParams {
  SourceSpec source;
  BeamSpec beam;
  DetectorSpec detector;
  Geometry geometry = geometry::Collinear{};
};

// SI description of a setup. Lengths in m, wavenumbers in 1/m, energies in J,
// inverse temperature in 1/J, mass in kg.
struct SiParams {
  double w = 0.0;
  double w_z = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double mass = 0.0;
  Statistics statistics = Statistics::Fermion;
  double lambda = 1.0;
  double k0 = 0.0;
  double dk_perp = 0.0;
  double dk_z = 0.0;
  double a = 0.0;
  double d = 0.0;
  Geometry geometry = geometry::Collinear{};
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double neutron_mass = 1.67492749804e-27;  // kg
inline constexpr double speed_of_light = 299792458.0;      // m/s
}  // namespace constants

// Converts to natural units (hbar = m = 1, w = 1). Throws ParameterError
// for a nonpositive w or mass.
NaturalParams to_natural(const SiParams& si);

// Inverse of to_natural given the length scale w [m] and mass [kg].
SiParams to_si(const NaturalParams& nat, double w_si, double mass_si);

}  // namespace antibunch
