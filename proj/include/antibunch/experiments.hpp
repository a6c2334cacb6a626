#pragma once

// Visibility estimates for published experiments.
//
// With both detectors at distance z the dip (or bump, for bosons) at zero
// separation has depth
//
//   1/2 * lateral * longitudinal,
//   lateral      = 1 / (1 + 2 a^2 w^2 k0^2 / z^2),
//   longitudinal = 1 / sqrt(1 + 4 dk_z^2 d^2).
//
// Coherence and detector scales are mapped to dk_z = 1/(2 l_coh) and
// d = l_det; the variant with d = l_det / 2 is reported alongside. Times are
// converted to lengths with the particle speed (hbar k0 / m, or c for
// photons).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "antibunch/params.hpp"

namespace antibunch {

enum class Particle { Electron, Neutron, Photon };

struct CoherenceScale {
  enum class Kind { Time, Length };
  Kind kind = Kind::Length;
  double coh = 0.0;  // s or m
  double det = 0.0;  // s or m
};

struct ExperimentPreset {
  std::string name;
  Particle particle = Particle::Electron;
  Statistics statistics = Statistics::Fermion;
  double a = 0.0;   // m
  double w = 0.0;   // m
  double k0 = 0.0;  // 1/m
  double z = 0.0;   // m
  CoherenceScale coherence;
  std::optional<double> quoted_lateral;
  std::optional<double> quoted_longitudinal;
  std::string notes;

  void validate() const;
};

// Presets shipped with the library (data/presets.json, embedded at build time).
const std::vector<ExperimentPreset>& builtin_presets();
const ExperimentPreset& find_preset(std::string_view name);  // throws ParameterError

std::vector<ExperimentPreset> parse_presets(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentPreset& p);

double particle_speed(const ExperimentPreset& p);  // m/s

struct CoherenceLengthsSi {
  double l_coh = 0.0;  // m
  double l_det = 0.0;  // m
};
CoherenceLengthsSi coherence_lengths_si(const ExperimentPreset& p);

double lateral_factor(const ExperimentPreset& p);
double longitudinal_factor(const ExperimentPreset& p);
double longitudinal_factor_half_det(const ExperimentPreset& p);  // d = l_det / 2

struct DipReport {
  std::string name;
  Statistics statistics = Statistics::Fermion;
  double lateral = 0.0;
  double longitudinal = 0.0;
  double longitudinal_half_det = 0.0;
  double depth = 0.0;  // 1/2 * lateral * longitudinal
  std::optional<double> quoted_lateral;
  std::optional<double> quoted_longitudinal;
  // 1/2 * quoted factors, each falling back to the computed one when absent
  double depth_quoted = 0.0;
  CoherenceLengthsSi lengths;
  std::string notes;
};

DipReport dip_report(const ExperimentPreset& p);
nlohmann::json to_json(const DipReport& r);
std::string to_text(const DipReport& r);

// The preset as a collinear SI setup: both detectors at z, dk_perp = dk_z,
// w_z = w / 20, room temperature, fermions filled to the top of the band.
// Photons get the electron mass as a nominal value; the closed-form
// correlator does not depend on it.
SiParams to_si_params(const ExperimentPreset& p);

}  // namespace antibunch
