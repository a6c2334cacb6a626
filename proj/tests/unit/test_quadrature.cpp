#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "antibunch/errors.hpp"
#include "antibunch/quadrature.hpp"

using namespace antibunch;

TEST_SUITE("quadrature") {

TEST_CASE("GK21 weights") {
  const auto& r = detail::gk21_rule();
  double sk = r.wk[0], sg = 0.0;
  for (int j = 1; j < 11; ++j) sk += 2.0 * r.wk[j];
  for (int j = 0; j < 5; ++j) sg += 2.0 * r.wg[j];
  CHECK(sk == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sg == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.x[0] == 0.0);
  for (int j = 1; j < 11; ++j) CHECK(r.x[j] > r.x[j - 1]);
}

TEST_CASE("polynomials are integrated exactly by a single panel") {
  // Kronrod 21 is exact to degree 31
  auto f = [](double x) { return std::pow(x, 30) - 3.0 * x * x + 1.0; };
  const auto p = detail::gk21<double>(f, -1.0, 1.0);
  CHECK(p.value == doctest::Approx(2.0 / 31.0 - 2.0 + 2.0).epsilon(1e-14));
}

TEST_CASE("Gaussian and oscillatory integrals") {
  QuadSpec spec{1e-12};
  auto g = [](double x) { return std::exp(-x * x); };
  const auto r = integrate_1d<double>(g, -12.0, 12.0, spec);
  CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(r.abs_error < 1e-11);

  // int_0^{2 pi} cos(50 x) e^{i x} dx = 0
  auto h = [](double x) { return std::cos(50.0 * x) * std::exp(std::complex<double>(0.0, x)); };
  const auto c = integrate_1d<std::complex<double>>(h, 0.0, 2.0 * std::numbers::pi, QuadSpec{1e-10, 1e-12});
  CHECK(std::abs(c.value) < 1e-10);
}

TEST_CASE("breakpoints handle a kink") {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const std::array<double, 1> cuts{0.3};
  const auto r = integrate_1d<double>(f, 0.0, 1.0, QuadSpec{1e-13}, cuts);
  CHECK(r.value == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
  CHECK(r.intervals <= 2);
}

TEST_CASE("vector integrand: moments in one pass") {
  auto f = [](double x) {
    VecN<3> v;
    v[0] = 1.0;
    v[1] = x;
    v[2] = x * x;
    return v;
  };
  const auto r = integrate_1d<VecN<3>>(f, 0.0, 2.0, QuadSpec{1e-12});
  CHECK(r.value[0] == doctest::Approx(2.0));
  CHECK(r.value[1] == doctest::Approx(2.0));
  CHECK(r.value[2] == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("exhausted subdivisions raise ConvergenceError with an estimate") {
  QuadSpec spec{1e-14};
  spec.max_subdiv = 3;
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  try {
    integrate_1d<double>(f, 0.0, 1.0, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_estimate() == doctest::Approx(2.0).epsilon(0.1));
    CHECK(e.abs_error() > 0.0);
  }
}

TEST_CASE("invalid specs") {
  QuadSpec s;
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), ParameterError);
  s = {};
  s.k_window_sigmas = 3.0;
  CHECK_THROWS_AS(s.validate(), ParameterError);
}

TEST_CASE("nested box and square integration") {
  auto f = [](std::span<const double> x) { return std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]) * (1.0 + x[2]); };
  const auto r = integrate_nd(f, Box{{-10.0, -10.0, 0.0}, {10.0, 10.0, 1.0}}, QuadSpec{1e-10});
  CHECK(r.value == doctest::Approx(std::numbers::pi / std::sqrt(2.0) * 1.5).epsilon(1e-9));

  auto g = [](double x, double y) { return std::exp(-(x - y) * (x - y)) * std::cos(x - y); };
  const auto s = integrate_square<double>(g, 0.0, 1.0, {}, QuadSpec{1e-10}, 1.0);
  // symmetric kernel: 2 int_0^1 (1 - u) e^{-u^2} cos u du
  auto k = [](double u) { return 2.0 * (1.0 - u) * std::exp(-u * u) * std::cos(u); };
  const auto ref = integrate_1d<double>(k, 0.0, 1.0, QuadSpec{1e-13});
  CHECK(s.value == doctest::Approx(ref.value).epsilon(1e-9));
}

}
