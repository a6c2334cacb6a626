#pragma once

// JSON run configuration shared by the CLI and the Python module.
// The schema is documented in docs/config.md.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "antibunch/collinear.hpp"
#include "antibunch/params.hpp"
#include "antibunch/quadrature.hpp"
#include "antibunch/result.hpp"

namespace antibunch {

// Malformed configuration. what() ends with a short schema hint.
class ConfigError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

enum class SweepVar { D, A, Beta };

std::string_view to_string(SweepVar v);
SweepVar sweep_from_string(std::string_view name);

struct CollinearScan {
  std::vector<double> z1;  // natural units
  double z2 = 160.0;
  SweepVar sweep = SweepVar::D;
  std::vector<double> values;  // natural units
  std::vector<Method> methods{Method::Analytic};
};

struct OffAxisScan {
  std::vector<double> theta_d;
  std::vector<double> dr;  // r1 - r2, natural units
  double r = 160.0;        // r2
  bool oracle = false;
};

struct BeamProfileScan {
  std::vector<double> k;      // |k| along the beam axis, natural units
  std::vector<double> tilt;   // rad
  double r = 200.0;
  double bias = 0.1;
  bool radial_check = false;
};

struct RunConfig {
  bool si = false;
  // Output scales: a natural length times length_unit is the length in the
  // config's units, likewise for inverse temperature and momentum.
  double length_unit = 1.0;
  double beta_unit = 1.0;

  NaturalParams params;
  CollinearOptions options;
  CollinearScan collinear;
  OffAxisScan offaxis;
  BeamProfileScan profile;
  std::optional<int> threads;
  std::vector<std::string> warnings;

  CollinearSetup setup() const;
  double to_output_length(double natural) const { return natural * length_unit; }
  double sweep_to_output(double natural) const;
};

// Every field is optional and falls back to the defaults of the parameter
// structs. Throws ConfigError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Grid from either an explicit array or {"from", "to", "step"} /
// {"from", "to", "n"}. Empty arrays are allowed.
std::vector<double> parse_grid(const nlohmann::json& j, const std::string& where);

extern const char* const kConfigSchemaHint;

}  // namespace antibunch
