#include "antibunch/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "antibunch/beamprofile.hpp"
#include "antibunch/errors.hpp"
#include "antibunch/experiments.hpp"
#include "antibunch/offaxis.hpp"
#include "antibunch/parallel.hpp"
#include "antibunch/saddle.hpp"

namespace antibunch {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void apply_sweep(CollinearSetup& s, SweepVar var, double v) {
  switch (var) {
    case SweepVar::D: s.det.d = v; break;
    case SweepVar::A: s.det.a = v; break;
    case SweepVar::Beta: s.src.beta = v; break;
  }
}

CorrResult evaluate(const CollinearSetup& s, Method m, const CollinearOptions& opts, std::string* warning) {
  try {
    return c_normalized(s, m, opts);
  } catch (const ConvergenceError& e) {
    if (warning) *warning = e.what();
    CorrResult r;
    r.method = m;
    r.value = e.best_estimate();
    r.abs_error = e.abs_error();
    return r;
  }
}

}  // namespace

int resolve_threads(std::optional<int> flag, std::optional<int> config) {
  if (flag && *flag >= 1) return *flag;
  if (const char* env = std::getenv("ANTIBUNCH_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  if (config && *config >= 1) return *config;
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------- scans

std::vector<ScanRow> scan_collinear(const RunConfig& cfg, int threads, std::vector<std::string>* warnings) {
  const auto& cs = cfg.collinear;
  const std::size_t nz = cs.z1.size();
  const std::size_t nm = cs.methods.size();
  const std::size_t n = cs.values.size() * nm * nz;
  std::vector<ScanRow> rows(n);
  std::vector<std::string> notes(n);
  const CollinearSetup base = cfg.setup();
  parallel_for(n, threads, [&](std::size_t i) {
    const std::size_t iv = i / (nm * nz);
    const std::size_t im = (i / nz) % nm;
    const std::size_t iz = i % nz;
    CollinearSetup s = base;
    apply_sweep(s, cs.sweep, cs.values[iv]);
    s.z1 = cs.z1[iz];
    s.z2 = cs.z2;
    const auto r = evaluate(s, cs.methods[im], cfg.options, &notes[i]);
    rows[i] = ScanRow{cfg.sweep_to_output(cs.values[iv]), cfg.to_output_length(s.z1), cs.methods[im], r.value,
                      r.abs_error};
  });
  if (warnings)
    for (std::size_t i = 0; i < n; ++i)
      if (!notes[i].empty())
        warnings->push_back("z1=" + num(rows[i].z1) + " " + std::string(to_string(rows[i].method)) + ": " + notes[i]);
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "sweep_value,z1,method,C,err\n";
  for (const auto& r : rows)
    os << num(r.sweep_value) << ',' << num(r.z1) << ',' << to_string(r.method) << ',' << num(r.c) << ','
       << num(r.err) << '\n';
}

std::vector<OffAxisRow> scan_offaxis(const RunConfig& cfg, int threads) {
  const auto& os = cfg.offaxis;
  const auto& p = cfg.params;
  const std::size_t per = os.oracle ? 2 : 1;
  const std::size_t n = os.theta_d.size() * os.dr.size() * per;
  std::vector<OffAxisRow> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const std::size_t it = i / (os.dr.size() * per);
    const std::size_t id = (i / per) % os.dr.size();
    const bool oracle = per == 2 && i % 2 == 1;
    const double th = os.theta_d[it];
    const double r2 = os.r;
    const double r1 = os.r + os.dr[id];
    OffAxisRow row{th, cfg.to_output_length(r1), cfg.to_output_length(r2), oracle ? "oracle" : "analytic", 0.0, 0.0};
    if (oracle) {
      const auto o = momentum_oracle(th, r1, r2, p.source, p.beam, p.detector, cfg.options.numeric);
      row.c = o.c;
      row.err = o.abs_error;
    } else {
      row.c = c_offaxis(th, r1, r2, p.source, p.beam, p.detector).value;
    }
    rows[i] = row;
  });
  return rows;
}

void write_offaxis_csv(std::ostream& os, const std::vector<OffAxisRow>& rows) {
  os << "theta_d,r1,r2,method,C,err\n";
  for (const auto& r : rows)
    os << num(r.theta_d) << ',' << num(r.r1) << ',' << num(r.r2) << ',' << r.method << ',' << num(r.c) << ','
       << num(r.err) << '\n';
}

std::vector<ProfileRow> scan_beam_profile(const RunConfig& cfg, int threads) {
  const auto& bp = cfg.profile;
  const auto& p = cfg.params;
  const std::size_t nt = bp.tilt.size();
  const std::size_t n = bp.k.size() * nt;
  std::vector<ProfileRow> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const double k = bp.k[i / nt];
    const double alpha = bp.tilt[i % nt];
    const Vec3 kv{0.0, 0.0, k};
    const Vec3 rhat{std::sin(alpha), 0.0, std::cos(alpha)};
    const double ff = std::abs(farfield_amplitude(kv, rhat, bp.r, p.source, p.beam));
    const double f0 = std::abs(farfield_amplitude(kv, Vec3{0.0, 0.0, 1.0}, bp.r, p.source, p.beam));
    ProfileRow row;
    row.k = k / cfg.length_unit;
    row.tilt = alpha;
    row.r = cfg.to_output_length(bp.r);
    row.farfield_modulus = ff;
    row.intensity_rel = f0 > 0.0 ? (ff / f0) * (ff / f0) : 0.0;
    if (bp.radial_check) {
      const auto chk = radial_integral_check(kv, rhat, bp.r, p.source, p.beam, bp.bias);
      row.radial_modulus = std::abs(chk.extrapolated);
      row.rel_modulus_diff = chk.rel_modulus_diff;
    }
    rows[i] = row;
  });
  return rows;
}

std::vector<ProfileWidth> beam_profile_widths(const RunConfig& cfg) {
  std::vector<ProfileWidth> out;
  const auto& p = cfg.params;
  for (double k : cfg.profile.k) {
    const double hw = angular_half_width(Vec3{0.0, 0.0, k}, p.source, p.beam);
    out.push_back({k / cfg.length_unit, hw, p.source.w * k * hw});
  }
  return out;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows, bool radial) {
  os << "k,tilt,r,farfield_modulus,intensity_rel";
  if (radial) os << ",radial_modulus,rel_modulus_diff";
  os << '\n';
  for (const auto& r : rows) {
    os << num(r.k) << ',' << num(r.tilt) << ',' << num(r.r) << ',' << num(r.farfield_modulus) << ','
       << num(r.intensity_rel);
    if (radial) os << ',' << num(r.radial_modulus.value_or(NAN)) << ',' << num(r.rel_modulus_diff.value_or(NAN));
    os << '\n';
  }
}

// ----------------------------------------------------------- validation

bool ValidationReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass && !c.informational) return false;
  return true;
}

namespace {

struct Checker {
  ValidationReport& rep;
  std::string suite;

  void add(const std::string& name, double value, double tol, std::string detail = {}) {
    rep.checks.push_back({suite, name, value, tol, std::abs(value) <= tol, false, std::move(detail)});
  }
  void info(const std::string& name, double value, std::string detail = {}) {
    rep.checks.push_back({suite, name, value, 0.0, true, true, std::move(detail)});
  }
  // Runs f, turning a library exception into a failed check.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      rep.checks.push_back({suite, name, NAN, 0.0, false, false, e.what()});
    }
  }
};

}  // namespace

ValidationReport run_validation(const RunConfig& cfg, int threads) {
  ValidationReport rep;
  rep.warnings = cfg.warnings;
  const auto& p = cfg.params;
  CollinearSetup s = cfg.setup();
  s.z1 = s.z2 = cfg.collinear.z2;
  const auto& opts = cfg.options;
  for (const auto& w : s.warnings()) rep.warnings.push_back(w);

  {
    Checker c{rep, "normalization"};
    c.guarded("g f2 R", [&] {
      const auto n = normalizations(p.source, p.beam, p.detector);
      c.add("integral g - 1", n.g - 1.0, 1e-8);
      c.add("integral f^2 - 1", n.f2 - 1.0, 1e-8);
      c.add("integral R - 1", n.R - 1.0, 1e-8);
    });
  }

  {
    Checker c{rep, "symmetry"};
    c.guarded("exchange z1 <-> z2", [&] {
      CollinearSetup a = s, b = s;
      a.z1 = s.z2 + 1.0;
      b.z2 = s.z2 + 1.0;
      b.z1 = s.z2;
      const double ca = c_normalized(a, Method::GaussianApprox, opts).value;
      const double cb = c_normalized(b, Method::GaussianApprox, opts).value;
      c.add("gauss C(z2+1, z2) - C(z2, z2+1)", ca - cb, 1e-7);
      c.add("analytic C(z2+1, z2) - C(z2, z2+1)", c_analytic(a) - c_analytic(b), 1e-14);
    });
    c.guarded("lambda invariance", [&] {
      CollinearSetup a = s;
      a.z1 = s.z2 + 0.5;
      CollinearSetup b = a;
      b.src.lambda = 3.0 * a.src.lambda;
      const double ca = c_normalized(a, Method::GaussianApprox, opts).value;
      const double cb = c_normalized(b, Method::GaussianApprox, opts).value;
      c.add("gauss C(lambda) - C(3 lambda)", ca - cb, 1e-10);
    });
  }

  {
    Checker c{rep, "mirror"};
    c.guarded("boson + fermion = 2", [&] {
      CollinearSetup f = s, b = s;
      f.z1 = b.z1 = s.z2 + 0.5;
      f.src.statistics = Statistics::Fermion;
      b.src.statistics = Statistics::Boson;
      c.add("analytic C_b + C_f - 2", c_analytic(b) + c_analytic(f) - 2.0, 1e-12);
      // hot, dilute source: both occupations are e^-x to 1e-17 and flat
      // across the window
      const double klo = std::max(0.0, p.beam.k0 - 12.0 * p.beam.dk_z);
      const double khi = p.beam.k0 + 12.0 * p.beam.dk_z;
      f.src.beta = b.src.beta = 0.1 / (omega(khi, p.source) - omega(klo, p.source));
      f.src.mu = b.src.mu = omega(klo, p.source) - 40.0 / f.src.beta;
      const double cf = c_normalized(f, Method::GaussianApprox, opts).value;
      const double cbv = c_normalized(b, Method::GaussianApprox, opts).value;
      c.add("gauss C_b + C_f - 2 (dilute source)", cbv + cf - 2.0, 1e-8);
    });
  }

  if (p.source.statistics == Statistics::Classical) {
    Checker c{rep, "method-agreement"};
    c.add("classical C - 1", c_normalized(s, Method::GaussianApprox, opts).value - 1.0, 0.0);
  } else {
    Checker c{rep, "method-agreement"};
    c.guarded("numeric vs gauss", [&] {
      const double depth = std::abs(1.0 - c_analytic(s));
      const double len = 1.0 / p.beam.dk_z;
      const std::vector<double> offsets{0.0, 0.5 * len, len};
      std::vector<double> num_v(offsets.size()), gau_v(offsets.size());
      parallel_for(2 * offsets.size(), threads, [&](std::size_t i) {
        CollinearSetup t = s;
        t.z1 = s.z2 + offsets[i / 2];
        if (i % 2 == 0) {
          num_v[i / 2] = evaluate(t, Method::Numeric, opts, nullptr).value;
        } else {
          gau_v[i / 2] = c_normalized(t, Method::GaussianApprox, opts).value;
        }
      });
      for (std::size_t i = 0; i < offsets.size(); ++i)
        c.add("numeric - gauss at dz=" + num(offsets[i]), num_v[i] - gau_v[i], 0.05 * depth);
      c.add("numeric - analytic at dz=0", num_v[0] - c_analytic(s), 0.05 * depth);
      CollinearSetup t = s;
      t.z1 = s.z2 + len;
      c.info("numeric - analytic at dz=1/dk_z", num_v[2] - c_analytic(t),
             "closed form assumes N flat across the window");
    });

    Checker tc{rep, "temperature-invariance"};
    tc.guarded("numeric depth vs beta", [&] {
      const std::vector<double> scale{1.0, 1.0 / 25.0, 1.0 / 100.0};
      std::vector<double> depth(scale.size());
      parallel_for(scale.size(), threads, [&](std::size_t i) {
        CollinearSetup t = s;
        t.src.beta = s.src.beta * scale[i];
        depth[i] = std::abs(1.0 - evaluate(t, Method::Numeric, opts, nullptr).value);
      });
      const auto [lo, hi] = std::minmax_element(depth.begin(), depth.end());
      tc.add("relative spread of depth over beta, beta/25, beta/100", (*hi - *lo) / *hi, 0.02);
    });
  }

  {
    Checker c{rep, "reduction"};
    c.guarded("off-axis on-axis limit", [&] {
      const double r2 = s.z2;
      const double r1 = s.z2 + 1.0;
      c.add("c_offaxis(0) - on-axis form",
            c_offaxis(0.0, r1, r2, p.source, p.beam, p.detector).value -
                c_offaxis_on_axis(r1, r2, p.source, p.beam, p.detector),
            1e-12);
    });
    c.guarded("D~ = r^2 D", [&] {
      const double x = 3.0, y = 4.0, z = s.z2;
      const double r = std::sqrt(x * x + y * y + z * z);
      const auto dt = d_tilde(x, y, z, p.source, p.beam, p.detector);
      const auto d = d_funcs(std::acos(z / r), p.source, p.beam, p.detector);
      const double r2 = r * r;
      const double dev = std::max({std::abs(dt.d1 / (r2 * d.d1) - 1.0), std::abs(dt.d2 / (r2 * d.d2) - 1.0),
                                   std::abs(dt.d3 / (r2 * d.d3) - 1.0)});
      c.add("max relative deviation", dev, 1e-10);
    });
    c.guarded("consistency corrections", [&] {
      CollinearSetup t = s;
      t.z1 = s.z2 + 0.5;
      const auto rep2 = consistency_corrections(t);
      c.add("consistent form - uncorrected", rep2.consistent_deviation, 1e-12);
      c.info("literal form - uncorrected", rep2.literal_deviation, "first-order expansion of the consistent form");
    });
    c.guarded("saddle stationarity", [&] {
      const auto sp = saddle_params(p.beam.k0, p.source.w, p.source.w_z, p.detector.a, s.z2);
      const auto t0 = saddle_theta0(sp);
      c.add("residual at theta0", saddle_stationarity(sp, t0.theta0), 1e-9);
    });
  }
  return rep;
}

json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"informational", c.informational},
                      {"detail", c.detail}});
  return json{{"ok", r.ok()}, {"warnings", r.warnings}, {"checks", checks}};
}

// ------------------------------------------------------------------ CLI

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// "from:to:step" or "v1,v2,..." ("" is the empty grid)
json grid_arg(const std::string& s) {
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw ConfigError("grid '" + s + "': expected from:to:step");
    return json{{"from", std::stod(parts[0])}, {"to", std::stod(parts[1])}, {"step", std::stod(parts[2])}};
  }
  json arr = json::array();
  for (const auto& p : split(s, ','))
    if (!p.empty()) arr.push_back(std::stod(p));
  return arr;
}

struct Common {
  std::string config;
  std::string out;
  bool json_out = false;
  std::optional<int> threads;
  std::optional<std::string> units, statistics, mu, route;
  std::optional<double> beta, w_z, k0, dk_z, dk_perp, a, d, rel_tol;

  void add_to(CLI::App* app, bool with_out = true) {
    app->add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
    if (with_out) app->add_option("--out", out, "write output to FILE instead of stdout");
    app->add_flag("--json", json_out, "emit a JSON report");
    app->add_option("--threads", threads, "worker threads (overrides ANTIBUNCH_THREADS)")->check(CLI::PositiveNumber);
    app->add_option("--units", units, "natural or SI");
    app->add_option("--statistics", statistics, "fermion, boson or classical");
    app->add_option("--beta", beta, "inverse temperature");
    app->add_option("--mu", mu, "chemical potential or window_top");
    app->add_option("--w-z", w_z, "emitting-region depth");
    app->add_option("--k0", k0, "central momentum");
    app->add_option("--dk-z", dk_z, "longitudinal momentum width");
    app->add_option("--dk-perp", dk_perp, "lateral momentum width");
    app->add_option("--a", a, "detector lateral size");
    app->add_option("--d", d, "detector longitudinal resolution");
    app->add_option("--rel-tol", rel_tol, "relative tolerance of the Numeric quadrature");
    app->add_option("--route", route, "bessel or direct");
  }

  json document() const {
    json j = json::object();
    if (!config.empty()) {
      std::ifstream in(config);
      try {
        j = json::parse(in, nullptr, true, true);
      } catch (const json::parse_error& e) {
        throw ConfigError("config '" + config + "': " + e.what() + "\n  hint: " + kConfigSchemaHint);
      }
    }
    if (units) j["units"] = *units;
    if (statistics) j["source"]["statistics"] = *statistics;
    if (beta) j["source"]["beta"] = *beta;
    if (mu) {
      if (*mu == "window_top") {
        j["source"]["mu"] = *mu;
      } else {
        j["source"]["mu"] = std::stod(*mu);
      }
    }
    if (w_z) j["source"]["w_z"] = *w_z;
    if (k0) j["beam"]["k0"] = *k0;
    if (dk_z) j["beam"]["dk_z"] = *dk_z;
    if (dk_perp) j["beam"]["dk_perp"] = *dk_perp;
    if (a) j["detector"]["a"] = *a;
    if (d) j["detector"]["d"] = *d;
    if (rel_tol) j["quad"]["rel_tol"] = *rel_tol;
    if (route) j["route"] = *route;
    return j;
  }
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void print_warnings(std::ostream& err, const std::vector<std::string>& w) {
  for (const auto& s : w) err << "warning: " << s << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-particle correlations of a thermal beam", "antibunch"};
  app.require_subcommand(1);

  Common scan_c, off_c, prof_c, val_c, pre_c;

  auto* scan = app.add_subcommand("scan-collinear", "C(z1, z2) on the beam axis, CSV");
  scan_c.add_to(scan);
  std::optional<std::string> sweep, values, methods, z1;
  std::optional<double> z2;
  scan->add_option("--sweep", sweep, "d, a or beta");
  scan->add_option("--values", values, "sweep values: v1,v2,... or from:to:step");
  scan->add_option("--method", methods, "analytic, gauss, numeric (comma separated)");
  scan->add_option("--z1", z1, "z1 grid: v1,v2,... or from:to:step");
  scan->add_option("--z2", z2, "fixed z2");

  auto* off = app.add_subcommand("scan-offaxis", "off-axis correlator, CSV");
  off_c.add_to(off);
  std::optional<std::string> theta, dr;
  std::optional<double> off_r;
  bool oracle = false;
  off->add_option("--theta", theta, "theta_d grid (rad)");
  off->add_option("--dr", dr, "r1 - r2 grid");
  off->add_option("--r", off_r, "r2");
  off->add_flag("--oracle", oracle, "add momentum-integral oracle rows");

  auto* prof = app.add_subcommand("beam-profile", "far-field one-particle amplitude, CSV");
  prof_c.add_to(prof);
  std::optional<std::string> ks, tilt;
  std::optional<double> prof_r;
  bool radial = false;
  prof->add_option("--k", ks, "|k| grid");
  prof->add_option("--tilt", tilt, "tilt-angle grid (rad)");
  prof->add_option("--r", prof_r, "observation distance");
  prof->add_flag("--radial-check", radial, "compare with the eta-extrapolated radial integral");

  auto* pre = app.add_subcommand("preset", "visibility estimate for a named experiment");
  std::string preset_name;
  bool list = false;
  pre->add_option("name", preset_name, "preset name (all presets when omitted)");
  pre->add_option("--out", pre_c.out, "write output to FILE instead of stdout");
  pre->add_flag("--json", pre_c.json_out, "emit JSON");
  pre->add_flag("--list", list, "list preset names");

  auto* val = app.add_subcommand("validate", "numeric-vs-analytic and identity checks");
  val_c.add_to(val);

  std::vector<const char*> argv{"antibunch"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (scan->parsed()) {
      json j = scan_c.document();
      if (sweep) j["scan"]["sweep"] = *sweep;
      if (values) j["scan"]["values"] = grid_arg(*values);
      if (z1) j["scan"]["z1"] = grid_arg(*z1);
      if (z2) j["scan"]["z2"] = *z2;
      if (methods) {
        json m = json::array();
        for (const auto& s : split(*methods, ','))
          if (!s.empty()) m.push_back(s);
        j["scan"]["methods"] = m;
      }
      const auto cfg = parse_config(j);
      print_warnings(err, cfg.warnings);
      std::vector<std::string> warns;
      const auto rows = scan_collinear(cfg, resolve_threads(scan_c.threads, cfg.threads), &warns);
      print_warnings(err, warns);
      Output o(scan_c.out, out);
      if (scan_c.json_out) {
        json arr = json::array();
        for (const auto& r : rows)
          arr.push_back({{"sweep_value", r.sweep_value}, {"z1", r.z1}, {"method", to_string(r.method)}, {"C", r.c},
                         {"err", r.err}});
        o.stream() << json{{"sweep", to_string(cfg.collinear.sweep)}, {"rows", arr}, {"warnings", warns}}.dump(2)
                   << '\n';
      } else {
        write_scan_csv(o.stream(), rows);
      }
      return 0;
    }
    if (off->parsed()) {
      json j = off_c.document();
      if (theta) j["offaxis_scan"]["theta_d"] = grid_arg(*theta);
      if (dr) j["offaxis_scan"]["dr"] = grid_arg(*dr);
      if (off_r) j["offaxis_scan"]["r"] = *off_r;
      if (oracle) j["offaxis_scan"]["oracle"] = true;
      const auto cfg = parse_config(j);
      print_warnings(err, cfg.warnings);
      const auto rows = scan_offaxis(cfg, resolve_threads(off_c.threads, cfg.threads));
      Output o(off_c.out, out);
      if (off_c.json_out) {
        json arr = json::array();
        for (const auto& r : rows)
          arr.push_back({{"theta_d", r.theta_d}, {"r1", r.r1}, {"r2", r.r2}, {"method", r.method}, {"C", r.c},
                         {"err", r.err}});
        o.stream() << json{{"rows", arr}}.dump(2) << '\n';
      } else {
        write_offaxis_csv(o.stream(), rows);
      }
      return 0;
    }
    if (prof->parsed()) {
      json j = prof_c.document();
      if (ks) j["beam_profile"]["k"] = grid_arg(*ks);
      if (tilt) j["beam_profile"]["tilt"] = grid_arg(*tilt);
      if (prof_r) j["beam_profile"]["r"] = *prof_r;
      if (radial) j["beam_profile"]["radial_check"] = true;
      const auto cfg = parse_config(j);
      print_warnings(err, cfg.warnings);
      const auto rows = scan_beam_profile(cfg, resolve_threads(prof_c.threads, cfg.threads));
      Output o(prof_c.out, out);
      if (prof_c.json_out) {
        json arr = json::array();
        for (const auto& r : rows) {
          json row{{"k", r.k}, {"tilt", r.tilt}, {"r", r.r}, {"farfield_modulus", r.farfield_modulus},
                   {"intensity_rel", r.intensity_rel}};
          if (r.radial_modulus) {
            row["radial_modulus"] = *r.radial_modulus;
            row["rel_modulus_diff"] = *r.rel_modulus_diff;
          }
          arr.push_back(row);
        }
        json widths = json::array();
        for (const auto& w : beam_profile_widths(cfg))
          widths.push_back({{"k", w.k}, {"half_width", w.half_width}, {"w_k_half_width", w.scaled}});
        o.stream() << json{{"rows", arr}, {"angular_half_widths", widths}}.dump(2) << '\n';
      } else {
        write_profile_csv(o.stream(), rows, cfg.profile.radial_check);
      }
      return 0;
    }
    if (pre->parsed()) {
      Output o(pre_c.out, out);
      if (list) {
        for (const auto& p : builtin_presets()) o.stream() << p.name << '\n';
        return 0;
      }
      std::vector<ExperimentPreset> chosen;
      if (preset_name.empty()) {
        chosen = builtin_presets();
      } else {
        chosen.push_back(find_preset(preset_name));
      }
      if (pre_c.json_out) {
        json arr = json::array();
        for (const auto& p : chosen) arr.push_back(to_json(dip_report(p)));
        o.stream() << (preset_name.empty() ? arr : arr.at(0)).dump(2) << '\n';
      } else {
        for (std::size_t i = 0; i < chosen.size(); ++i) o.stream() << (i ? "\n" : "") << to_text(dip_report(chosen[i]));
      }
      return 0;
    }
    if (val->parsed()) {
      const auto cfg = parse_config(val_c.document());
      const auto rep = run_validation(cfg, resolve_threads(val_c.threads, cfg.threads));
      Output o(val_c.out, out);
      if (val_c.json_out) {
        o.stream() << to_json(rep).dump(2) << '\n';
      } else {
        print_warnings(o.stream(), rep.warnings);
        for (const auto& c : rep.checks) {
          const char* tag = c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL");
          o.stream() << tag << "  " << c.suite << ": " << c.name << "  value=" << num(c.value);
          if (!c.informational) o.stream() << " tol=" << num(c.tolerance);
          if (!c.detail.empty()) o.stream() << "  (" << c.detail << ")";
          o.stream() << '\n';
        }
        o.stream() << (rep.ok() ? "validation passed" : "validation FAILED") << '\n';
      }
      return rep.ok() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: bad numeric argument (" << e.what() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace antibunch
