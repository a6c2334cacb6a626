#include <cmath>

#include "doctest.h"

#include "antibunch/config.hpp"
#include "antibunch/errors.hpp"

using namespace antibunch;
using nlohmann::json;

TEST_SUITE("config") {

TEST_CASE("grids") {
  CHECK(parse_grid(json(2.5), "g") == std::vector<double>{2.5});
  CHECK(parse_grid(json::array({1, 2, 3}), "g") == std::vector<double>{1, 2, 3});
  CHECK(parse_grid(json::array(), "g").empty());
  const auto s = parse_grid(json{{"from", 0.0}, {"to", 1.0}, {"step", 0.25}}, "g");
  REQUIRE(s.size() == 5);
  CHECK(s.back() == doctest::Approx(1.0));
  const auto n = parse_grid(json{{"from", -1.0}, {"to", 1.0}, {"n", 3}}, "g");
  CHECK(n == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK_THROWS_AS(parse_grid(json{{"from", 0.0}, {"to", 1.0}}, "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(json{{"from", 0.0}, {"to", 1.0}, {"step", -1.0}}, "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(json::array({"x"}), "g"), ConfigError);
}

TEST_CASE("defaults") {
  const auto c = parse_config(json::object());
  CHECK_FALSE(c.si);
  CHECK(c.params.source.beta == 5.0);
  CHECK(c.params.beam.k0 == 20.0);
  // fermions default to a Fermi level at the top of the window
  CHECK(c.params.source.mu == doctest::Approx(0.5 * 20.5 * 20.5));
  CHECK(c.collinear.z1.size() == 81);
  CHECK(c.collinear.z1.front() == doctest::Approx(150.0));
  CHECK(c.collinear.methods == std::vector<Method>{Method::Analytic});
  CHECK(c.profile.tilt.size() == 21);
  CHECK_FALSE(c.threads.has_value());
  const auto b = parse_config(json{{"source", {{"statistics", "boson"}}}});
  CHECK(b.params.source.mu == 0.0);
}

TEST_CASE("explicit values and the window_top keyword") {
  const auto c = parse_config(json{{"source", {{"mu", "window_top"}, {"beta", 2.0}}},
                                   {"beam", {{"k0", 10.0}, {"dk_z", 1.0}}},
                                   {"detector", {{"a", 1.0}, {"d", 2.0}}},
                                   {"geometry", {{"type", "collinear"}, {"z1", 100.0}, {"z2", 110.0}}},
                                   {"scan", {{"sweep", "d"}, {"values", {0, 1}}, {"methods", {"gauss", "numeric"}}}},
                                   {"route", "direct"},
                                   {"threads", 3}});
  CHECK(c.params.source.mu == doctest::Approx(60.5));
  CHECK(c.setup().z1 == 100.0);
  CHECK(c.setup().z2 == 110.0);
  CHECK(c.collinear.z2 == 110.0);
  CHECK(c.collinear.values == std::vector<double>{0, 1});
  CHECK(c.collinear.methods.size() == 2);
  CHECK(c.options.route == AngularRoute::Direct);
  CHECK(c.threads == 3);
}

TEST_CASE("SI configs convert to natural units") {
  const double w = 1e-8, m = constants::electron_mass;
  const double e0 = constants::hbar * constants::hbar / (m * w * w);
  const auto c = parse_config(json{{"units", "SI"},
                                   {"source", {{"w", w}, {"w_z", w / 20}, {"mass", m}, {"beta", 5.0 / e0},
                                               {"mu", 100.0 * e0}}},
                                   {"beam", {{"k0", 20.0 / w}, {"dk_perp", 0.5 / w}, {"dk_z", 0.5 / w}}},
                                   {"detector", {{"a", 2.0 * w}, {"d", 3.0 * w}}},
                                   {"geometry", {{"z1", 160.0 * w}, {"z2", 161.0 * w}}},
                                   {"scan", {{"z1", {160.0 * w}}}}});
  CHECK(c.si);
  CHECK(c.params.source.w == 1.0);
  CHECK(c.params.source.beta == doctest::Approx(5.0));
  CHECK(c.params.source.mu == doctest::Approx(100.0));
  CHECK(c.params.beam.k0 == doctest::Approx(20.0));
  CHECK(c.params.detector.d == doctest::Approx(3.0));
  CHECK(c.setup().z2 == doctest::Approx(161.0));
  CHECK(c.collinear.z1.at(0) == doctest::Approx(160.0));
  CHECK(c.to_output_length(160.0) == doctest::Approx(160.0 * w));
  CHECK_THROWS_AS(parse_config(json{{"units", "SI"}}), ConfigError);
}

TEST_CASE("errors name the offending key") {
  auto msg = [](const json& j) {
    try {
      parse_config(j);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg(json{{"scna", 1}}).find("scna") != std::string::npos);
  CHECK(msg(json{{"source", {{"beta", "hot"}}}}).find("source.beta") != std::string::npos);
  CHECK(msg(json{{"source", {{"beta", -1.0}}}}).find("beta") != std::string::npos);
  CHECK(msg(json{{"units", "cgs"}}).find("units") != std::string::npos);
  CHECK(msg(json{{"geometry", {{"type", "helix"}}}}).find("geometry.type") != std::string::npos);
  CHECK(msg(json{{"scan", {{"methods", {"exact"}}}}}).find("scan.methods") != std::string::npos);
  CHECK(msg(json{{"threads", 0}}).find("threads") != std::string::npos);
  CHECK(msg(json{{"route", "bessel"}}).empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("loose tolerances warn") {
  CHECK(parse_config(json{{"quad", {{"rel_tol", 0.2}}}}).warnings.size() == 1);
  CHECK(parse_config(json{{"quad", {{"rel_tol", 1e-6}}}}).warnings.empty());
}

TEST_CASE("shipped example configs parse") {
  for (const char* f : {"dip_sweep.json", "offaxis_angle.json", "beam_profile.json"}) {
    CAPTURE(f);
    CHECK_NOTHROW(load_config(std::string(ANTIBUNCH_SOURCE_DIR) + "/configs/" + f));
  }
}

}
