#include <sstream>

#include "doctest.h"

#include "antibunch/cli.hpp"

using namespace antibunch;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("scan rows come out in grid order independent of threads") {
  auto cfg = parse_config(json{{"scan", {{"z1", {{"from", 158.0}, {"to", 162.0}, {"step", 0.5}}},
                                         {"values", {0.0, 2.0}},
                                         {"methods", {"analytic", "gauss"}}}}});
  const auto r1 = scan_collinear(cfg, 1);
  const auto r3 = scan_collinear(cfg, 3);
  REQUIRE(r1.size() == 2 * 2 * 9);
  std::ostringstream a, b;
  write_scan_csv(a, r1);
  write_scan_csv(b, r3);
  CHECK(a.str() == b.str());
  CHECK(r1[0].method == Method::Analytic);
  CHECK(r1[0].z1 == 158.0);
  CHECK(r1[9].method == Method::GaussianApprox);
  CHECK(r1[18].sweep_value == 2.0);
}

TEST_CASE("an empty z1 grid gives a header-only CSV") {
  auto r = cli({"scan-collinear", "--z1", ""});
  CHECK(r.code == 0);
  CHECK(r.out == "sweep_value,z1,method,C,err\n");
}

TEST_CASE("scan-collinear flags") {
  auto r = cli({"scan-collinear", "--z1", "160,162", "--sweep", "d", "--values", "0", "--method", "analytic"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0,160,analytic,0.5,0") != std::string::npos);
  CHECK(r.out.find("0,162,analytic,0.816060279414") != std::string::npos);
  auto t = cli({"scan-collinear", "--z1", "160", "--threads", "2"});
  CHECK(t.code == 0);
}

TEST_CASE("off-axis and beam-profile subcommands") {
  auto o = cli({"scan-offaxis", "--theta", "0,0.01", "--dr", "0"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("theta_d,r1,r2,method,C,err\n", 0) == 0);
  auto p = cli({"beam-profile", "--k", "20", "--tilt", "0,0.01"});
  REQUIRE(p.code == 0);
  CHECK(p.out.rfind("k,tilt,r,farfield_modulus,intensity_rel\n", 0) == 0);
  CHECK(p.out.find("20,0,200,") != std::string::npos);
}

TEST_CASE("preset subcommand") {
  auto l = cli({"preset", "--list"});
  CHECK(l.code == 0);
  CHECK(l.out.find("xray") != std::string::npos);
  auto j = cli({"preset", "xray", "--json"});
  REQUIRE(j.code == 0);
  CHECK(json::parse(j.out).at("name") == "xray");
  CHECK(cli({"preset", "muon-collider"}).code == 2);
}

TEST_CASE("validate passes on the defaults and reports JSON") {
  auto v = cli({"validate", "--json"});
  CHECK(v.code == 0);
  const auto j = json::parse(v.out);
  CHECK(j.at("ok") == true);
  CHECK(j.at("checks").size() > 5);
}

TEST_CASE("usage and configuration errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"scan-collinear", "--config", "/nonexistent.json"}).code == 2);
  auto bad = cli({"scan-collinear", "--config", std::string(ANTIBUNCH_SOURCE_DIR) + "/tests/data/bad_config.json"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("scna") != std::string::npos);
  CHECK(cli({"scan-collinear", "--beta", "-3"}).code == 2);
  CHECK(cli({"scan-collinear", "--sweep", "q"}).code == 2);
}

TEST_CASE("runtime failures exit with 1") {
  // bosons with mu inside the band have no thermal state
  auto r = cli({"scan-collinear", "--statistics", "boson", "--mu", "500", "--z1", "160", "--method", "gauss"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

}
