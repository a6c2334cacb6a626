#include <cmath>

#include "doctest.h"

#include "antibunch/collinear.hpp"
#include "antibunch/errors.hpp"
#include "antibunch/experiments.hpp"

using namespace antibunch;

namespace {

// electron speed at k0 = 1e10 1/m, computed by hand
constexpr double kElectronSpeed = constants::hbar * 1e10 / constants::electron_mass;

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("built-in presets") {
  const auto& ps = builtin_presets();
  REQUIRE(ps.size() == 5);
  for (const auto& p : ps) CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(find_preset("nope"), ParameterError);
  CHECK(find_preset("xray").particle == Particle::Photon);
  CHECK(find_preset("electron").statistics == Statistics::Fermion);
}

TEST_CASE("visibility factors land in the quoted ranges") {
  const auto e = dip_report(find_preset("electron"));
  CHECK(e.lateral > 1e-4 / 3);
  CHECK(e.lateral < 1e-4 * 10);
  CHECK(e.longitudinal > 1e-3);
  CHECK(e.longitudinal < 1e-2);

  const auto nm = dip_report(find_preset("neutron-mosaic"));
  CHECK(nm.lateral < 1e-9);
  CHECK(nm.longitudinal > 0.05);
  CHECK(nm.longitudinal < 0.5);

  const auto nc = dip_report(find_preset("neutron-monocrystal"));
  CHECK(nc.lateral > 1e-3);
  CHECK(nc.lateral < 1e-1);

  const auto x = dip_report(find_preset("xray"));
  CHECK(x.lateral > 0.8);
  CHECK(x.longitudinal == doctest::Approx(0.37).epsilon(0.03));
  CHECK(x.depth == doctest::Approx(0.5 * 0.9 * 0.4).epsilon(0.1));
  CHECK(x.depth_quoted == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(x.longitudinal_half_det > x.longitudinal);

  const auto pt = dip_report(find_preset("pseudothermal"));
  CHECK(pt.lateral == doctest::Approx(0.1).epsilon(0.2));
  CHECK(pt.longitudinal > 0.99);
}

TEST_CASE("dip depth never exceeds one half") {
  for (const auto& p : builtin_presets()) {
    const auto r = dip_report(p);
    CHECK(r.depth <= 0.5);
    CHECK(r.depth == doctest::Approx(0.5 * r.lateral * r.longitudinal));
  }
}

TEST_CASE("factors grow as the detector shrinks") {
  auto p = find_preset("electron");
  double prev = 0.0;
  for (double a : {1e-5, 1e-6, 1e-7, 0.0}) {
    p.a = a;
    const double l = lateral_factor(p);
    CHECK(l > prev);
    prev = l;
  }
  CHECK(prev == 1.0);
  p.coherence.det = 0.0;
  CHECK(longitudinal_factor(p) == 1.0);
  CHECK(longitudinal_factor_half_det(p) == 1.0);
}

TEST_CASE("time scales use the particle speed") {
  ExperimentPreset p;
  p.name = "t";
  p.particle = Particle::Electron;
  p.w = 1e-9;
  p.k0 = 1e10;
  p.z = 1.0;
  p.coherence = {CoherenceScale::Kind::Time, 1e-15, 2e-15};
  CHECK(particle_speed(p) == doctest::Approx(kElectronSpeed).epsilon(1e-12));
  const auto l = coherence_lengths_si(p);
  CHECK(l.l_coh == doctest::Approx(kElectronSpeed * 1e-15));
  CHECK(l.l_det == doctest::Approx(kElectronSpeed * 2e-15));
  const double expect = 1.0 / std::sqrt(1.0 + 4.0 * std::pow(1.0 / (2.0 * l.l_coh), 2) * l.l_det * l.l_det);
  CHECK(longitudinal_factor(p) == doctest::Approx(expect).epsilon(1e-14));
  p.particle = Particle::Photon;
  CHECK(particle_speed(p) == constants::speed_of_light);
}

TEST_CASE("depth matches the collinear closed form of the same setup") {
  for (const auto& p : builtin_presets()) {
    CAPTURE(p.name);
    const auto nat = to_natural(to_si_params(p));
    CollinearSetup s;
    s.src = nat.source;
    s.beam = nat.beam;
    s.det = nat.detector;
    const auto& g = std::get<geometry::Collinear>(nat.geometry);
    s.z1 = g.z1;
    s.z2 = g.z2;
    const double c = c_analytic(s);
    CHECK(std::abs(1.0 - c) == doctest::Approx(dip_report(p).depth).epsilon(1e-9));
  }
}

TEST_CASE("preset JSON round trip and parse errors") {
  const auto& p = find_preset("xray");
  const auto back = parse_presets({{"presets", nlohmann::json::array({to_json(p)})}});
  REQUIRE(back.size() == 1);
  CHECK(back[0].name == p.name);
  CHECK(back[0].a == p.a);
  CHECK(back[0].coherence.coh == p.coherence.coh);
  CHECK(back[0].quoted_lateral == p.quoted_lateral);

  auto bad = to_json(p);
  bad["w"] = -1.0;
  CHECK_THROWS_AS(parse_presets({{"presets", nlohmann::json::array({bad})}}), ParameterError);
  bad = to_json(p);
  bad["particle"] = "muon";
  CHECK_THROWS_AS(parse_presets({{"presets", nlohmann::json::array({bad})}}), ParameterError);
  CHECK_THROWS_AS(parse_presets(nlohmann::json::object()), ParameterError);
}

TEST_CASE("text report names a dip for fermions and a bump for bosons") {
  CHECK(to_text(dip_report(find_preset("electron"))).find("dip") != std::string::npos);
  CHECK(to_text(dip_report(find_preset("xray"))).find("bump") != std::string::npos);
  const auto j = to_json(dip_report(find_preset("xray")));
  CHECK(j.at("depth").get<double>() > 0.0);
}

}
