#include "antibunch/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "antibunch/errors.hpp"

namespace antibunch {

const char* const kConfigSchemaHint =
    "expected a JSON object with optional keys units (\"natural\"|\"SI\"), source, beam, detector, "
    "geometry, quad, gauss_quad, route, scan, offaxis_scan, beam_profile, threads; see docs/config.md";

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg + "\n  hint: " + kConfigSchemaHint); }

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) fail(where + ": unknown key '" + key + "'");
}

void read(const json& j, const char* key, double& out, const std::string& where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) fail(where + "." + key + ": expected a number");
  out = j.at(key).get<double>();
}

void read_int(const json& j, const char* key, int& out, const std::string& where) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer()) fail(where + "." + key + ": expected an integer");
  out = j.at(key).get<int>();
}

QuadSpec parse_quad(const json& j, QuadSpec q, const std::string& where) {
  check_keys(j, where, {"rel_tol", "abs_tol", "max_subdiv", "k_window_sigmas"});
  read(j, "rel_tol", q.rel_tol, where);
  read(j, "abs_tol", q.abs_tol, where);
  read_int(j, "max_subdiv", q.max_subdiv, where);
  read(j, "k_window_sigmas", q.k_window_sigmas, where);
  return q;
}

}  // namespace

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::D: return "d";
    case SweepVar::A: return "a";
    case SweepVar::Beta: return "beta";
  }
  return "?";
}

SweepVar sweep_from_string(std::string_view name) {
  if (name == "d") return SweepVar::D;
  if (name == "a") return SweepVar::A;
  if (name == "beta") return SweepVar::Beta;
  throw ConfigError("unknown sweep variable '" + std::string(name) + "' (expected d, a or beta)");
}

std::vector<double> parse_grid(const json& j, const std::string& where) {
  std::vector<double> out;
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) fail(where + ": grid entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (!j.is_object()) fail(where + ": expected a number, an array or {from, to, step|n}");
  check_keys(j, where, {"from", "to", "step", "n"});
  if (!j.contains("from") || !j.contains("to")) fail(where + ": range needs 'from' and 'to'");
  double from = 0.0, to = 0.0;
  read(j, "from", from, where);
  read(j, "to", to, where);
  if (j.contains("n") == j.contains("step")) fail(where + ": range needs exactly one of 'step' or 'n'");
  if (j.contains("n")) {
    int n = 0;
    read_int(j, "n", n, where);
    if (n < 0) fail(where + ".n: must be >= 0");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? from : from + (to - from) * i / (n - 1));
    return out;
  }
  double step = 0.0;
  read(j, "step", step, where);
  if (!(step > 0.0)) fail(where + ".step: must be > 0");
  // integer counting keeps the grid free of accumulated rounding
  const long n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(from + step * static_cast<double>(i));
  return out;
}

CollinearSetup RunConfig::setup() const {
  CollinearSetup s;
  s.src = params.source;
  s.beam = params.beam;
  s.det = params.detector;
  if (const auto* c = std::get_if<geometry::Collinear>(&params.geometry)) {
    s.z1 = c->z1;
    s.z2 = c->z2;
  }
  return s;
}

double RunConfig::sweep_to_output(double natural) const {
  return collinear.sweep == SweepVar::Beta ? natural * beta_unit : natural * length_unit;
}

namespace {

RunConfig parse_config_impl(const json& j) {
  check_keys(j, "config",
             {"units", "source", "beam", "detector", "geometry", "quad", "gauss_quad", "route", "scan",
              "offaxis_scan", "beam_profile", "threads", "comment"});
  RunConfig cfg;
  const std::string units = j.value("units", "natural");
  if (units == "SI" || units == "si") {
    cfg.si = true;
  } else if (units != "natural") {
    fail("units: expected \"natural\" or \"SI\"");
  }

  // Raw values in the config's units.
  SiParams raw;
  raw.w = 1.0;
  raw.w_z = SourceSpec{}.w_z;
  raw.beta = SourceSpec{}.beta;
  raw.mass = 1.0;
  raw.k0 = BeamSpec{}.k0;
  raw.dk_perp = BeamSpec{}.dk_perp;
  raw.dk_z = BeamSpec{}.dk_z;
  double mono_limit = BeamSpec{}.mono_limit;
  bool mu_window_top = false;
  bool mu_given = false;

  if (cfg.si) {
    // no meaningful defaults for an SI setup
    if (!j.contains("source") || !j.at("source").contains("w") || !j.at("source").contains("mass"))
      fail("SI config: source.w and source.mass are required");
  }

  if (j.contains("source")) {
    const auto& s = j.at("source");
    check_keys(s, "source", {"w", "w_z", "beta", "mu", "mass", "statistics", "lambda"});
    read(s, "w", raw.w, "source");
    read(s, "w_z", raw.w_z, "source");
    read(s, "beta", raw.beta, "source");
    read(s, "mass", raw.mass, "source");
    read(s, "lambda", raw.lambda, "source");
    if (s.contains("mu")) {
      mu_given = true;
      const auto& mu = s.at("mu");
      if (mu.is_string() && mu.get<std::string>() == "window_top") {
        mu_window_top = true;
      } else if (mu.is_number()) {
        raw.mu = mu.get<double>();
      } else {
        fail("source.mu: expected a number or \"window_top\"");
      }
    }
    if (s.contains("statistics")) {
      if (!s.at("statistics").is_string()) fail("source.statistics: expected a string");
      try {
        raw.statistics = statistics_from_string(s.at("statistics").get<std::string>());
      } catch (const ParameterError& e) {
        fail(std::string("source.statistics: ") + e.what());
      }
    }
  }
  if (j.contains("beam")) {
    const auto& b = j.at("beam");
    check_keys(b, "beam", {"k0", "dk_perp", "dk_z", "mono_limit"});
    read(b, "k0", raw.k0, "beam");
    read(b, "dk_perp", raw.dk_perp, "beam");
    read(b, "dk_z", raw.dk_z, "beam");
    read(b, "mono_limit", mono_limit, "beam");
  }
  if (j.contains("detector")) {
    const auto& d = j.at("detector");
    check_keys(d, "detector", {"a", "d"});
    read(d, "a", raw.a, "detector");
    read(d, "d", raw.d, "detector");
  }

  if (!cfg.si) {
    // natural units: keep w and mass as given, default geometry in units of w
    raw.geometry = geometry::Collinear{};
  } else {
    raw.geometry = geometry::Collinear{160.0 * raw.w, 160.0 * raw.w};
  }
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    const std::string type = g.value("type", "collinear");
    if (type == "collinear") {
      check_keys(g, "geometry", {"type", "z1", "z2"});
      geometry::Collinear c = std::get<geometry::Collinear>(raw.geometry);
      read(g, "z1", c.z1, "geometry");
      read(g, "z2", c.z2, "geometry");
      raw.geometry = c;
    } else if (type == "offaxis") {
      check_keys(g, "geometry", {"type", "theta_d", "phi", "r1", "r2"});
      geometry::OffAxis o;
      if (cfg.si) o.r1 = o.r2 = 160.0 * raw.w;
      read(g, "theta_d", o.theta_d, "geometry");
      read(g, "phi", o.phi, "geometry");
      read(g, "r1", o.r1, "geometry");
      read(g, "r2", o.r2, "geometry");
      raw.geometry = o;
    } else if (type == "symmetric_pair") {
      check_keys(g, "geometry", {"type", "x", "y", "z"});
      geometry::SymmetricPair p;
      if (cfg.si) p.z = 160.0 * raw.w;
      read(g, "x", p.x, "geometry");
      read(g, "y", p.y, "geometry");
      read(g, "z", p.z, "geometry");
      raw.geometry = p;
    } else {
      fail("geometry.type: expected collinear, offaxis or symmetric_pair");
    }
  }

  if (cfg.si) {
    try {
      cfg.params = to_natural(raw);
    } catch (const ParameterError& e) {
      fail(e.what());
    }
    cfg.length_unit = raw.w;
    cfg.beta_unit = raw.mass * raw.w * raw.w / (constants::hbar * constants::hbar);
  } else {
    auto& p = cfg.params;
    p.source = SourceSpec{raw.w, raw.w_z, raw.beta, raw.mu, raw.mass, raw.statistics, raw.lambda};
    p.beam.k0 = raw.k0;
    p.beam.dk_perp = raw.dk_perp;
    p.beam.dk_z = raw.dk_z;
    p.detector = DetectorSpec{raw.a, raw.d};
    p.geometry = raw.geometry;
  }
  cfg.params.beam.mono_limit = mono_limit;
  if (!mu_given && raw.statistics == Statistics::Fermion) mu_window_top = true;
  if (mu_window_top) {
    const double kt = cfg.params.beam.k0 + cfg.params.beam.dk_z;
    cfg.params.source.mu = 0.5 * kt * kt / cfg.params.source.mass;
  }

  try {
    cfg.params.source.validate();
    cfg.params.beam.validate();
    cfg.params.detector.validate();
    validate(cfg.params.geometry);
  } catch (const ParameterError& e) {
    fail(e.what());
  }

  if (j.contains("quad")) cfg.options.numeric = parse_quad(j.at("quad"), cfg.options.numeric, "quad");
  if (j.contains("gauss_quad"))
    cfg.options.gauss = parse_quad(j.at("gauss_quad"), cfg.options.gauss, "gauss_quad");
  for (const auto* q : {&cfg.options.numeric, &cfg.options.gauss}) {
    if (q->rel_tol >= 0.1)
      cfg.warnings.push_back("rel_tol = " + std::to_string(q->rel_tol) + " is too loose for meaningful results");
    try {
      q->validate();
    } catch (const ParameterError& e) {
      fail(std::string("quad: ") + e.what());
    }
  }
  if (j.contains("route")) {
    const auto r = j.at("route").get<std::string>();
    if (r == "bessel") {
      cfg.options.route = AngularRoute::BesselSeries;
    } else if (r == "direct") {
      cfg.options.route = AngularRoute::Direct;
    } else {
      fail("route: expected \"bessel\" or \"direct\"");
    }
  }

  const double L = cfg.length_unit;
  auto lengths = [L](std::vector<double> v) {
    for (auto& x : v) x /= L;
    return v;
  };

  // collinear scan
  auto& cs = cfg.collinear;
  const auto base = cfg.setup();
  cs.z2 = base.z2;
  cs.values = {cfg.params.detector.d};
  bool z1_given = false;
  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    check_keys(s, "scan", {"z1", "z2", "sweep", "values", "methods"});
    if (s.contains("z2")) {
      double z2 = 0.0;
      read(s, "z2", z2, "scan");
      cs.z2 = z2 / L;
    }
    if (s.contains("z1")) {
      cs.z1 = lengths(parse_grid(s.at("z1"), "scan.z1"));
      z1_given = true;
    }
    if (s.contains("sweep")) {
      try {
        cs.sweep = sweep_from_string(s.at("sweep").get<std::string>());
      } catch (const ConfigError& e) {
        fail(std::string("scan.sweep: ") + e.what());
      }
    }
    switch (cs.sweep) {
      case SweepVar::D: cs.values = {cfg.params.detector.d}; break;
      case SweepVar::A: cs.values = {cfg.params.detector.a}; break;
      case SweepVar::Beta: cs.values = {cfg.params.source.beta}; break;
    }
    if (s.contains("values")) {
      cs.values = parse_grid(s.at("values"), "scan.values");
      const double unit = cs.sweep == SweepVar::Beta ? cfg.beta_unit : L;
      for (auto& v : cs.values) v /= unit;
    }
    if (s.contains("methods")) {
      cs.methods.clear();
      for (const auto& m : s.at("methods")) {
        try {
          cs.methods.push_back(method_from_string(m.get<std::string>()));
        } catch (const ParameterError& e) {
          fail(std::string("scan.methods: ") + e.what());
        }
      }
    }
  }
  if (!z1_given) {
    for (int i = -40; i <= 40; ++i) cs.z1.push_back(cs.z2 + 0.25 * i);
  }

  // off-axis scan
  auto& os = cfg.offaxis;
  if (const auto* o = std::get_if<geometry::OffAxis>(&cfg.params.geometry)) {
    os.theta_d = {o->theta_d};
    os.dr = {o->r1 - o->r2};
    os.r = o->r2;
  } else {
    os.theta_d = {0.0};
    os.dr = {0.0};
    os.r = base.z2;
  }
  if (j.contains("offaxis_scan")) {
    const auto& s = j.at("offaxis_scan");
    check_keys(s, "offaxis_scan", {"theta_d", "dr", "r", "oracle"});
    if (s.contains("theta_d")) os.theta_d = parse_grid(s.at("theta_d"), "offaxis_scan.theta_d");
    if (s.contains("dr")) os.dr = lengths(parse_grid(s.at("dr"), "offaxis_scan.dr"));
    if (s.contains("r")) {
      read(s, "r", os.r, "offaxis_scan");
      os.r /= L;
    }
    os.oracle = s.value("oracle", false);
  }

  // beam profile
  auto& bp = cfg.profile;
  bp.k = {cfg.params.beam.k0};
  for (int i = 0; i <= 20; ++i) bp.tilt.push_back(0.005 * i);
  if (j.contains("beam_profile")) {
    const auto& s = j.at("beam_profile");
    check_keys(s, "beam_profile", {"k", "tilt", "r", "bias", "radial_check"});
    if (s.contains("k")) {
      bp.k = parse_grid(s.at("k"), "beam_profile.k");
      for (auto& k : bp.k) k *= L;
    }
    if (s.contains("tilt")) bp.tilt = parse_grid(s.at("tilt"), "beam_profile.tilt");
    if (s.contains("r")) {
      read(s, "r", bp.r, "beam_profile");
      bp.r /= L;
    }
    read(s, "bias", bp.bias, "beam_profile");
    bp.radial_check = s.value("radial_check", false);
  }

  if (j.contains("threads")) {
    int t = 0;
    read_int(j, "threads", t, "config");
    if (t < 1) fail("threads: must be >= 1");
    cfg.threads = t;
  }
  return cfg;
}

}  // namespace

RunConfig parse_config(const json& j) {
  try {
    return parse_config_impl(j);
  } catch (const json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

}  // namespace antibunch
