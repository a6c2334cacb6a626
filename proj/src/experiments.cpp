#include "antibunch/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "antibunch/errors.hpp"
#include "antibunch/presets_data.hpp"

namespace antibunch {

namespace {

using nlohmann::json;

std::string_view particle_name(Particle p) {
  switch (p) {
    case Particle::Electron: return "electron";
    case Particle::Neutron: return "neutron";
    case Particle::Photon: return "photon";
  }
  return "?";
}

Particle particle_from_string(std::string_view s) {
  if (s == "electron") return Particle::Electron;
  if (s == "neutron") return Particle::Neutron;
  if (s == "photon") return Particle::Photon;
  throw ParameterError("unknown particle '" + std::string(s) + "'");
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParameterError(where + ": missing numeric field '" + key + "'");
  return j.at(key).get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void ExperimentPreset::validate() const {
  if (name.empty()) throw ParameterError("preset: empty name");
  if (!(a >= 0.0)) throw ParameterError("preset " + name + ": a must be >= 0");
  if (!(w > 0.0)) throw ParameterError("preset " + name + ": w must be > 0");
  if (!(k0 > 0.0)) throw ParameterError("preset " + name + ": k0 must be > 0");
  if (!(z > 0.0)) throw ParameterError("preset " + name + ": z must be > 0");
  if (!(coherence.coh > 0.0)) throw ParameterError("preset " + name + ": coherence scale must be > 0");
  if (!(coherence.det >= 0.0)) throw ParameterError("preset " + name + ": detector scale must be >= 0");
}

std::vector<ExperimentPreset> parse_presets(const json& j) {
  if (!j.contains("presets") || !j.at("presets").is_array()) throw ParameterError("presets: expected a 'presets' array");
  std::vector<ExperimentPreset> out;
  for (const auto& e : j.at("presets")) {
    ExperimentPreset p;
    p.name = e.at("name").get<std::string>();
    p.particle = particle_from_string(e.at("particle").get<std::string>());
    p.statistics = statistics_from_string(e.at("statistics").get<std::string>());
    p.a = number(e, "a", p.name);
    p.w = number(e, "w", p.name);
    p.k0 = number(e, "k0", p.name);
    p.z = number(e, "z", p.name);
    const auto& c = e.at("coherence");
    const auto kind = c.at("kind").get<std::string>();
    if (kind == "time") {
      p.coherence.kind = CoherenceScale::Kind::Time;
    } else if (kind == "length") {
      p.coherence.kind = CoherenceScale::Kind::Length;
    } else {
      throw ParameterError(p.name + ": coherence kind must be 'time' or 'length'");
    }
    p.coherence.coh = number(c, "coh", p.name);
    p.coherence.det = number(c, "det", p.name);
    p.quoted_lateral = optional_number(e, "quoted_lateral");
    p.quoted_longitudinal = optional_number(e, "quoted_longitudinal");
    p.notes = e.value("notes", "");
    p.validate();
    out.push_back(std::move(p));
  }
  return out;
}

json to_json(const ExperimentPreset& p) {
  return json{{"name", p.name},
              {"particle", particle_name(p.particle)},
              {"statistics", to_string(p.statistics)},
              {"a", p.a},
              {"w", p.w},
              {"k0", p.k0},
              {"z", p.z},
              {"coherence",
               {{"kind", p.coherence.kind == CoherenceScale::Kind::Time ? "time" : "length"},
                {"coh", p.coherence.coh},
                {"det", p.coherence.det}}},
              {"quoted_lateral", optional_json(p.quoted_lateral)},
              {"quoted_longitudinal", optional_json(p.quoted_longitudinal)},
              {"notes", p.notes}};
}

const std::vector<ExperimentPreset>& builtin_presets() {
  static const std::vector<ExperimentPreset> presets = parse_presets(json::parse(detail::kPresetsJson));
  return presets;
}

const ExperimentPreset& find_preset(std::string_view name) {
  for (const auto& p : builtin_presets())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : builtin_presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ParameterError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

double particle_speed(const ExperimentPreset& p) {
  switch (p.particle) {
    case Particle::Electron: return constants::hbar * p.k0 / constants::electron_mass;
    case Particle::Neutron: return constants::hbar * p.k0 / constants::neutron_mass;
    case Particle::Photon: return constants::speed_of_light;
  }
  return 0.0;
}

CoherenceLengthsSi coherence_lengths_si(const ExperimentPreset& p) {
  p.validate();
  const double v = p.coherence.kind == CoherenceScale::Kind::Time ? particle_speed(p) : 1.0;
  return {v * p.coherence.coh, v * p.coherence.det};
}

double lateral_factor(const ExperimentPreset& p) {
  p.validate();
  const double x = p.a * p.w * p.k0 / p.z;
  return 1.0 / (1.0 + 2.0 * x * x);
}

namespace {

double resolution_factor(double l_coh, double d) {
  const double dkz = 0.5 / l_coh;
  return 1.0 / std::sqrt(1.0 + 4.0 * dkz * dkz * d * d);
}

}  // namespace

double longitudinal_factor(const ExperimentPreset& p) {
  const auto l = coherence_lengths_si(p);
  return resolution_factor(l.l_coh, l.l_det);
}

double longitudinal_factor_half_det(const ExperimentPreset& p) {
  const auto l = coherence_lengths_si(p);
  return resolution_factor(l.l_coh, 0.5 * l.l_det);
}

DipReport dip_report(const ExperimentPreset& p) {
  DipReport r;
  r.name = p.name;
  r.statistics = p.statistics;
  r.lateral = lateral_factor(p);
  r.longitudinal = longitudinal_factor(p);
  r.longitudinal_half_det = longitudinal_factor_half_det(p);
  r.depth = 0.5 * r.lateral * r.longitudinal;
  r.quoted_lateral = p.quoted_lateral;
  r.quoted_longitudinal = p.quoted_longitudinal;
  r.depth_quoted = 0.5 * p.quoted_lateral.value_or(r.lateral) * p.quoted_longitudinal.value_or(r.longitudinal);
  r.lengths = coherence_lengths_si(p);
  r.notes = p.notes;
  return r;
}

json to_json(const DipReport& r) {
  return json{{"name", r.name},
              {"statistics", to_string(r.statistics)},
              {"lateral", r.lateral},
              {"longitudinal", r.longitudinal},
              {"longitudinal_half_det", r.longitudinal_half_det},
              {"depth", r.depth},
              {"quoted_lateral", optional_json(r.quoted_lateral)},
              {"quoted_longitudinal", optional_json(r.quoted_longitudinal)},
              {"depth_quoted", r.depth_quoted},
              {"l_coh", r.lengths.l_coh},
              {"l_det", r.lengths.l_det},
              {"notes", r.notes}};
}

std::string to_text(const DipReport& r) {
  const char* what = r.statistics == Statistics::Boson ? "bump" : "dip";
  std::ostringstream os;
  os << r.name << " (" << to_string(r.statistics) << ")\n"
     << "  l_coh = " << fmt(r.lengths.l_coh) << " m, l_det = " << fmt(r.lengths.l_det) << " m\n"
     << "  lateral factor       " << fmt(r.lateral);
  if (r.quoted_lateral) os << "   (quoted " << fmt(*r.quoted_lateral) << ")";
  os << "\n  longitudinal factor  " << fmt(r.longitudinal);
  if (r.quoted_longitudinal) os << "   (quoted " << fmt(*r.quoted_longitudinal) << ")";
  os << "\n  with d = l_det/2     " << fmt(r.longitudinal_half_det);
  os << "\n  " << what << (r.statistics == Statistics::Boson ? " depth           " : " depth            ") << fmt(r.depth) << "   (from quoted factors " << fmt(r.depth_quoted)
     << ")\n";
  if (!r.notes.empty()) os << "  " << r.notes << "\n";
  return os.str();
}

SiParams to_si_params(const ExperimentPreset& p) {
  const auto l = coherence_lengths_si(p);
  SiParams si;
  si.mass = p.particle == Particle::Neutron ? constants::neutron_mass : constants::electron_mass;
  si.w = p.w;
  si.w_z = p.w / 20.0;
  si.beta = 1.0 / (constants::k_boltzmann * 300.0);
  si.statistics = p.statistics;
  si.k0 = p.k0;
  si.dk_z = 0.5 / l.l_coh;
  si.dk_perp = si.dk_z;
  const double ktop = p.k0 + 8.0 * si.dk_z;
  si.mu = p.statistics == Statistics::Fermion ? constants::hbar * constants::hbar * ktop * ktop / (2.0 * si.mass) : 0.0;
  si.a = p.a;
  si.d = l.l_det;
  si.geometry = geometry::Collinear{p.z, p.z};
  return si;
}

}  // namespace antibunch
