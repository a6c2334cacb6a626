#pragma once

// Command-line driver. The subcommands are thin layers over the scan and
// validation functions below, which the tests call directly.
//
// CSV floats are printed with %.12g; rows come out in grid order whatever
// the thread count.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "antibunch/config.hpp"
#include "antibunch/result.hpp"

namespace antibunch {

struct ScanRow {
  double sweep_value = 0.0;  // config units
  double z1 = 0.0;           // config units
  Method method = Method::Analytic;
  double c = 0.0;
  double err = 0.0;
};

// Rows ordered by sweep value, then method, then z1. Points whose quadrature
// does not converge report the best estimate and add a warning.
std::vector<ScanRow> scan_collinear(const RunConfig& cfg, int threads, std::vector<std::string>* warnings = nullptr);
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

struct OffAxisRow {
  double theta_d = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  std::string method;  // "analytic" or "oracle"
  double c = 0.0;
  double err = 0.0;
};
std::vector<OffAxisRow> scan_offaxis(const RunConfig& cfg, int threads);
void write_offaxis_csv(std::ostream& os, const std::vector<OffAxisRow>& rows);

struct ProfileRow {
  double k = 0.0;
  double tilt = 0.0;
  double r = 0.0;
  double farfield_modulus = 0.0;
  double intensity_rel = 0.0;  // |phi(tilt)|^2 / |phi(0)|^2
  std::optional<double> radial_modulus;
  std::optional<double> rel_modulus_diff;
};
struct ProfileWidth {
  double k = 0.0;
  double half_width = 0.0;
  double scaled = 0.0;  // w k half_width
};
std::vector<ProfileRow> scan_beam_profile(const RunConfig& cfg, int threads);
std::vector<ProfileWidth> beam_profile_widths(const RunConfig& cfg);
void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows, bool radial);

struct ValidationCheck {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool informational = false;  // reported, never fails the run
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> warnings;
  bool ok() const;
};

ValidationReport run_validation(const RunConfig& cfg, int threads);
nlohmann::json to_json(const ValidationReport& r);

// Exit codes: 0 success, 1 validation failure or runtime error, 2 usage or
// configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace antibunch
