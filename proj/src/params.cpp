#include "antibunch/params.hpp"

#include <cmath>
#include <sstream>

#include "antibunch/errors.hpp"

namespace antibunch {

std::string_view to_string(Statistics s) {
  switch (s) {
    case Statistics::Fermion: return "fermion";
    case Statistics::Boson: return "boson";
    case Statistics::Classical: return "classical";
  }
  return "fermion";
}

Statistics statistics_from_string(std::string_view name) {
  if (name == "fermion") return Statistics::Fermion;
  if (name == "boson") return Statistics::Boson;
  if (name == "classical") return Statistics::Classical;
  throw ParameterError("unknown statistics '" + std::string(name) +
                       "' (expected fermion, boson or classical)");
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ParameterError(msg);
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void SourceSpec::validate() const {
  require(finite_all({w, w_z, beta, mu, mass, lambda}), "source parameters must be finite");
  require(w > 0.0, "source: w must be > 0");
  require(w_z >= 0.0, "source: w_z must be >= 0");
  require(beta > 0.0, "source: beta must be > 0");
  require(mass > 0.0, "source: mass must be > 0");
}

void BeamSpec::validate() const {
  require(finite_all({k0, dk_perp, dk_z, mono_limit}), "beam parameters must be finite");
  require(k0 > 0.0, "beam: k0 must be > 0");
  require(dk_perp > 0.0, "beam: dk_perp must be > 0");
  require(dk_z > 0.0, "beam: dk_z must be > 0");
  require(mono_limit > 0.0, "beam: mono_limit must be > 0");
}

void DetectorSpec::validate() const {
  require(finite_all({a, d}), "detector parameters must be finite");
  require(a >= 0.0, "detector: a must be >= 0");
  require(d >= 0.0, "detector: d must be >= 0");
}

void validate(const Geometry& g) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geometry::Collinear>) {
          require(v.z1 > 0.0 && v.z2 > 0.0, "collinear geometry: z1, z2 must be > 0");
        } else if constexpr (std::is_same_v<T, geometry::OffAxis>) {
          require(v.r1 > 0.0 && v.r2 > 0.0, "off-axis geometry: r1, r2 must be > 0");
          require(finite_all({v.theta_d, v.phi}), "off-axis geometry: angles must be finite");
        } else {
          require(v.z > 0.0, "symmetric-pair geometry: z must be > 0");
          require(finite_all({v.x, v.y}), "symmetric-pair geometry: x, y must be finite");
        }
      },
      g);
}

std::vector<std::string> far_field_warnings(const Geometry& g, const SourceSpec& src,
                                            const DetectorSpec& det, double ratio) {
  std::vector<double> distances;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geometry::Collinear>) {
          distances = {v.z1, v.z2};
        } else if constexpr (std::is_same_v<T, geometry::OffAxis>) {
          distances = {v.r1, v.r2};
        } else {
          distances = {std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z)};
        }
      },
      g);

  std::vector<std::string> out;
  auto check = [&](double r, double scale, const char* name) {
    if (scale > 0.0 && r < ratio * scale) {
      std::ostringstream os;
      os << "far field: distance " << r << " < " << ratio << " * " << name << " (" << scale << ")";
      out.push_back(os.str());
    }
  };
  for (double r : distances) {
    check(r, src.w, "w");
    check(r, det.a, "a");
    check(r, det.d, "d");
  }
  return out;
}

NaturalParams to_natural(const SiParams& si) {
  if (!(si.w > 0.0)) throw ParameterError("unit conversion: w must be > 0");
  if (!(si.mass > 0.0)) throw ParameterError("unit conversion: mass must be > 0");

  const double L = si.w;
  // energy unit hbar^2 / (m w^2)
  const double E = constants::hbar * constants::hbar / (si.mass * L * L);

  NaturalParams nat;
  nat.source.w = 1.0;
  nat.source.w_z = si.w_z / L;
  nat.source.beta = si.beta * E;
  nat.source.mu = si.mu / E;
  nat.source.mass = 1.0;
  nat.source.statistics = si.statistics;
  nat.source.lambda = si.lambda;
  nat.beam.k0 = si.k0 * L;
  nat.beam.dk_perp = si.dk_perp * L;
  nat.beam.dk_z = si.dk_z * L;
  nat.detector.a = si.a / L;
  nat.detector.d = si.d / L;
  nat.geometry = std::visit(
      [L](const auto& v) -> Geometry {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geometry::Collinear>) {
          return geometry::Collinear{v.z1 / L, v.z2 / L};
        } else if constexpr (std::is_same_v<T, geometry::OffAxis>) {
          return geometry::OffAxis{v.theta_d, v.phi, v.r1 / L, v.r2 / L};
        } else {
          return geometry::SymmetricPair{v.x / L, v.y / L, v.z / L};
        }
      },
      si.geometry);
  return nat;
}

SiParams to_si(const NaturalParams& nat, double w_si, double mass_si) {
  if (!(w_si > 0.0)) throw ParameterError("unit conversion: w must be > 0");
  if (!(mass_si > 0.0)) throw ParameterError("unit conversion: mass must be > 0");

  // A natural-unit spec may carry w != 1 or mass != 1; fold both into the scales.
  const double L = w_si / nat.source.w;
  const double M = mass_si / nat.source.mass;
  const double E = constants::hbar * constants::hbar / (M * L * L);

  SiParams si;
  si.w = nat.source.w * L;
  si.w_z = nat.source.w_z * L;
  si.beta = nat.source.beta / E;
  si.mu = nat.source.mu * E;
  si.mass = nat.source.mass * M;
  si.statistics = nat.source.statistics;
  si.lambda = nat.source.lambda;
  si.k0 = nat.beam.k0 / L;
  si.dk_perp = nat.beam.dk_perp / L;
  si.dk_z = nat.beam.dk_z / L;
  si.a = nat.detector.a * L;
  si.d = nat.detector.d * L;
  si.geometry = std::visit(
      [L](const auto& v) -> Geometry {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, geometry::Collinear>) {
          return geometry::Collinear{v.z1 * L, v.z2 * L};
        } else if constexpr (std::is_same_v<T, geometry::OffAxis>) {
          return geometry::OffAxis{v.theta_d, v.phi, v.r1 * L, v.r2 * L};
        } else {
          return geometry::SymmetricPair{v.x * L, v.y * L, v.z * L};
        }
      },
      nat.geometry);
  return si;
}

}  // namespace antibunch
