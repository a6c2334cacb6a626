#include <cmath>
#include <numbers>

#include "doctest.h"

#include "antibunch/dists.hpp"
#include "antibunch/errors.hpp"

using namespace antibunch;

TEST_SUITE("dists") {

TEST_CASE("occupation values") {
  SourceSpec s;
  s.beta = 2.0;
  s.mu = 1.0;
  s.statistics = Statistics::Fermion;
  CHECK(occupation(2.0, s) == doctest::Approx(0.11920292202211755).epsilon(1e-14));
  CHECK(occupation(1.0, s) == doctest::Approx(0.5));
  s.statistics = Statistics::Boson;
  CHECK(occupation(2.0, s) == doctest::Approx(0.15651764274966565).epsilon(1e-14));
  CHECK_THROWS_AS(occupation(1.0, s), DomainError);
  CHECK_THROWS_AS(occupation(0.5, s), DomainError);
  s.statistics = Statistics::Classical;
  CHECK(occupation(2.0, s) == doctest::Approx(0.1353352832366127).epsilon(1e-14));
}

TEST_CASE("occupation is stable far from the Fermi level") {
  SourceSpec s;
  s.beta = 1.0;
  s.mu = 0.0;
  CHECK(occupation(700.0, s) == doctest::Approx(std::exp(-700.0)).epsilon(1e-12));
  CHECK(occupation(-700.0, s) == 1.0);
  s.statistics = Statistics::Boson;
  CHECK(occupation(1e-12, s) == doctest::Approx(1e12).epsilon(1e-6));
  CHECK(occupation(700.0, s) == doctest::Approx(std::exp(-700.0)).epsilon(1e-12));
  // Fermi + Bose in the tail: both equal e^-x to O(e^-2x)
  SourceSpec f = s;
  f.statistics = Statistics::Fermion;
  CHECK(occupation(40.0, f) / occupation(40.0, s) == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("window functions") {
  SourceSpec s;
  s.w = 2.0;
  s.w_z = 0.5;
  const double g0 = window_g(Vec3{}, s);
  CHECK(g0 == doctest::Approx(std::pow(2.0 * std::numbers::pi, -1.5) / (4.0 * 0.5)));
  CHECK(window_g(Vec3{2.0, 0.0, 0.0}, s) / g0 == doctest::Approx(std::exp(-0.5)));
  CHECK(window_g(Vec3{0.0, 0.0, 0.5}, s) / g0 == doctest::Approx(std::exp(-0.5)));
  // g~ is the Fourier transform: g~(0) = (2 pi)^-3 int g
  CHECK(window_g_tilde(Vec3{}, s) == doctest::Approx(std::pow(2.0 * std::numbers::pi, -3.0)));
  CHECK(window_g_tilde(Vec3{0.5, 0.0, 0.0}, s) / window_g_tilde(Vec3{}, s) == doctest::Approx(std::exp(-0.5)));
  s.w_z = 0.0;
  CHECK_THROWS_AS(window_g(Vec3{}, s), DomainError);
}

TEST_CASE("normalizations: g, f^2 and R integrate to one") {
  SourceSpec s;
  s.w = 1.3;
  s.w_z = 0.2;
  BeamSpec b;
  b.k0 = 20.0;
  b.dk_perp = 0.7;
  b.dk_z = 0.4;
  const auto n = normalizations(s, b, DetectorSpec{2.0, 3.0});
  CHECK(std::abs(n.g - 1.0) < 1e-8);
  CHECK(std::abs(n.f2 - 1.0) < 1e-8);
  CHECK(std::abs(n.R - 1.0) < 1e-8);
}

TEST_CASE("resolution function") {
  DetectorSpec d{1.0, 2.0};
  CHECK(resolution_dims(d) == 3);
  CHECK(resolution_dims(DetectorSpec{0.0, 2.0}) == 1);
  CHECK(resolution_dims(DetectorSpec{1.0, 0.0}) == 2);
  CHECK(resolution_dims(DetectorSpec{}) == 0);
  CHECK_THROWS_AS(resolution_R(Vec3{}, Vec3{}, DetectorSpec{0.0, 1.0}), DomainError);
  CHECK(resolution_R_reduced(Vec3{1.0, 2.0, 3.0}, Vec3{}, DetectorSpec{}) == 1.0);
  const double r0 = resolution_R(Vec3{0, 0, 5}, Vec3{0, 0, 5}, d);
  CHECK(resolution_R(Vec3{0, 0, 7}, Vec3{0, 0, 5}, d) / r0 == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("monochromator and emission amplitude") {
  BeamSpec b;
  const double peak = mono_f2_axis(b.k0, b);
  CHECK(mono_f2_axis(b.k0 + b.dk_z, b) / peak == doctest::Approx(std::exp(-0.5)));
  CHECK(mono_f2(Vec3{b.dk_perp, 0.0, b.k0}, b) / peak == doctest::Approx(std::exp(-0.5)));
  SourceSpec s;
  const Vec3 k{0.0, 0.0, 20.0};
  CHECK(emission_T(k, k, s, b) == doctest::Approx(mono_f(k, b) * window_g_tilde(Vec3{}, s)));
  // the step acts on the source momentum k, theta(0) = 0
  CHECK(emission_T(k, Vec3{0.0, 0.0, -0.1}, s, b) == 0.0);
  CHECK(emission_T(k, Vec3{0.0, 0.0, 0.0}, s, b) == 0.0);
  CHECK(emission_T(k, Vec3{0.0, 0.0, 19.9}, s, b) > 0.0);
}

TEST_CASE("spectrum window") {
  SourceSpec s;
  s.beta = 5.0;
  BeamSpec b;
  s.mu = 0.5 * std::pow(b.k0 + b.dk_z, 2);
  const auto win = spectrum_window(s, b, QuadSpec{});
  CHECK(win.lo <= b.k0 - 8.0 * b.dk_z);
  CHECK(win.hi >= b.k0 + b.dk_z);
  REQUIRE(win.breakpoints.size() == 2);
  CHECK(win.breakpoints[1] == doctest::Approx(b.k0 + b.dk_z));
  // everything outside the window is negligible
  const double peak = std::exp(win.log_peak);
  CHECK(effective_spectrum(win.lo, s, b) < 1e-9 * peak);
  CHECK(effective_spectrum(win.hi, s, b) < 1e-9 * peak);

  s.statistics = Statistics::Boson;
  s.mu = 0.5 * b.k0 * b.k0;
  CHECK_THROWS_AS(spectrum_window(s, b, QuadSpec{}), DomainError);
}

}
