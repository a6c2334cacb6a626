#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "antibunch/collinear.hpp"
#include "antibunch/errors.hpp"

using namespace antibunch;

namespace {

const double kSqrtPiOverE = std::sqrt(std::numbers::pi / std::numbers::e);

// k0 = 20, dk = 0.5, w_z = 0.05, beta = 5, mu at the top of the window
CollinearSetup reference(double dz = 0.0) {
  CollinearSetup s;
  s.src.beta = 5.0;
  s.src.mu = 0.5 * 20.5 * 20.5;
  s.z2 = 160.0;
  s.z1 = 160.0 + dz;
  return s;
}

// Fermi level far above the window: N = 1 across it
CollinearSetup flat(double dz = 0.0, double a = 0.0) {
  CollinearSetup s = reference(dz);
  s.src.mu = 0.5 * 35.0 * 35.0;
  s.det.a = a;
  return s;
}

}  // namespace

TEST_SUITE("collinear") {

TEST_CASE("closed form: floor, separation law, resolution factors") {
  CHECK(c_analytic(reference()) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c_analytic(reference(2.0)) == doctest::Approx(1.0 - 0.5 * std::exp(-1.0)).epsilon(1e-15));
  auto s = reference();
  s.det.d = 5.0;
  CHECK(1.0 - c_analytic(s) == doctest::Approx(0.5 / std::sqrt(26.0)).epsilon(1e-14));
  s = reference();
  s.det.a = 5.0;
  CHECK(1.0 - c_analytic(s) == doctest::Approx(0.5 / (1.0 + 2.0 * 25.0 * 400.0 / (160.0 * 160.0))).epsilon(1e-14));
}

TEST_CASE("statistics: bosons bunch, classical particles do not correlate") {
  auto s = reference(1.0);
  const double cf = c_analytic(s);
  s.src.statistics = Statistics::Boson;
  s.src.mu = 0.0;
  CHECK(c_analytic(s) + cf == doctest::Approx(2.0).epsilon(1e-15));
  s.src.statistics = Statistics::Classical;
  CHECK(c_analytic(s) == 1.0);
  CHECK(c_normalized(s, Method::Numeric).value == 1.0);
  CHECK(exchange_sign(Statistics::Fermion) == -1.0);
  CHECK(exchange_sign(Statistics::Boson) == 1.0);
}

TEST_CASE("reference parameters: frozen quadrature values") {
  // frozen from an independent quadrature of the same integrals
  CHECK(c_normalized(reference(0.0), Method::GaussianApprox).value == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(c_normalized(reference(1.0), Method::GaussianApprox).value == doctest::Approx(0.572853).epsilon(2e-6));
  CHECK(c_normalized(reference(2.0), Method::GaussianApprox).value == doctest::Approx(0.733538).epsilon(2e-6));
  CHECK(c_normalized(reference(0.0), Method::Numeric).value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(c_normalized(reference(1.0), Method::Numeric).value == doctest::Approx(0.572855).epsilon(3e-6));
  CHECK(c_normalized(reference(2.0), Method::Numeric).value == doctest::Approx(0.733544).epsilon(3e-6));
}

TEST_CASE("flat occupation: all three methods agree") {
  for (double dz : {0.0, 1.0, 2.0}) {
    CAPTURE(dz);
    const auto s = flat(dz);
    const double an = c_analytic(s);
    CHECK(c_normalized(s, Method::GaussianApprox).value == doctest::Approx(an).epsilon(1e-6));
    CHECK(c_normalized(s, Method::Numeric).value == doctest::Approx(an).epsilon(1e-5));
  }
  const auto s = flat(1.0, 5.0);
  const double an = c_analytic(s);
  CHECK(std::abs(c_normalized(s, Method::GaussianApprox).value - an) < 1e-4);
  CHECK(std::abs(c_normalized(s, Method::Numeric).value - an) < 1e-3);
}

TEST_CASE("one-particle density: closed form carries sqrt(pi/e) against Numeric") {
  const auto s = flat();
  const double an = rho1(s, 160.0, Method::Analytic).value;
  const double ga = rho1(s, 160.0, Method::GaussianApprox).value;
  const double nu = rho1(s, 160.0, Method::Numeric).value;
  CHECK(an / ga == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(an / nu == doctest::Approx(kSqrtPiOverE).epsilon(1e-2));
  // 1/z^2 falloff
  CHECK(rho1(s, 320.0, Method::GaussianApprox).value * 4.0 == doctest::Approx(ga).epsilon(1e-8));
}

TEST_CASE("exchange symmetry and coupling invariance") {
  auto a = reference(1.0);
  auto b = reference();
  b.z1 = 160.0;
  b.z2 = 161.0;
  for (auto m : {Method::Analytic, Method::GaussianApprox, Method::Numeric}) {
    CAPTURE(to_string(m));
    const double ca = c_normalized(a, m).value;
    CHECK(c_normalized(b, m).value == doctest::Approx(ca).epsilon(1e-7));
    auto l = a;
    l.src.lambda = 7.0;
    CHECK(c_normalized(l, m).value == doctest::Approx(ca).epsilon(1e-12));
  }
  // unnormalized pieces scale as lambda^2 and lambda^4
  auto l = a;
  l.src.lambda = 2.0;
  CHECK(rho1(l, 160.0, Method::GaussianApprox).value ==
        doctest::Approx(4.0 * rho1(a, 160.0, Method::GaussianApprox).value).epsilon(1e-12));
  CHECK(interference(l, Method::GaussianApprox).value ==
        doctest::Approx(16.0 * interference(a, Method::GaussianApprox).value).epsilon(1e-12));
}

TEST_CASE("mirror identity in the dilute limit") {
  auto f = flat(1.0);
  f.src.beta = 1e-4;
  f.src.mu = 0.5 * 14.0 * 14.0 - 40.0 / f.src.beta;
  auto b = f;
  b.src.statistics = Statistics::Boson;
  for (auto m : {Method::GaussianApprox, Method::Numeric}) {
    CAPTURE(to_string(m));
    CHECK(std::abs(c_normalized(f, m).value + c_normalized(b, m).value - 2.0) < 1e-9);
  }
}

TEST_CASE("angular factor: Bessel series and direct quadrature agree") {
  auto s = reference();
  s.det.a = 5.0;
  for (auto [k1, k2] : {std::pair{20.0, 20.0}, {19.0, 21.0}, {17.5, 22.0}, {20.3, 19.1}}) {
    CAPTURE(k1);
    CAPTURE(k2);
    const auto b = interference_angular(s, k1, k2, AngularRoute::BesselSeries);
    const auto d = interference_angular(s, k1, k2, AngularRoute::Direct);
    CHECK(b.value == doctest::Approx(d.value).epsilon(1e-8));
    CHECK(d.direct);
  }
  // no lateral resolution: the series has a single term
  const auto z = interference_angular(reference(), 20.0, 21.0, AngularRoute::BesselSeries);
  CHECK(z.terms == 1);
}

TEST_CASE("Numeric routes agree on the correlator") {
  auto s = reference(1.0);
  s.det.a = 1.0;
  CollinearOptions bessel;
  bessel.numeric = QuadSpec{1e-5};
  CollinearOptions direct = bessel;
  direct.route = AngularRoute::Direct;
  CHECK(c_normalized(s, Method::Numeric, bessel).value ==
        doctest::Approx(c_normalized(s, Method::Numeric, direct).value).epsilon(2e-5));
}

TEST_CASE("coherence lengths") {
  auto s = reference();
  s.z1 = 100.0;
  s.z2 = 200.0;
  const auto c = coherence_lengths(s);
  const double zeff = std::sqrt(2.0 / (1.0 / 1e4 + 1.0 / 4e4));
  CHECK(c.lateral == doctest::Approx(zeff / (std::sqrt(2.0) * 20.0)));
  CHECK(c.longitudinal == doctest::Approx(1.0));
}

TEST_CASE("dip shape: closed-form half width follows sqrt(1/dk_z^2 + 4 d^2)") {
  for (double d : {0.0, 1.0, 2.5, 5.0}) {
    CAPTURE(d);
    auto s = reference();
    s.det.d = d;
    const auto ds = dip_shape(s, Method::Analytic);
    CHECK(ds.depth == doctest::Approx(0.5 / std::sqrt(1.0 + d * d)).epsilon(1e-12));
    CHECK(ds.half_width == doctest::Approx(std::sqrt(4.0 + 4.0 * d * d)).epsilon(1e-8));
  }
}

TEST_CASE("consistency corrections leave the correlator unchanged") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    CollinearSetup s;
    s.beam.k0 = 10.0 + 30.0 * u(rng);
    s.beam.dk_perp = 0.2 + u(rng);
    s.beam.dk_z = 0.2 + u(rng);
    s.det.a = 10.0 * u(rng);
    s.det.d = 5.0 * u(rng);
    s.z1 = 100.0 + 200.0 * u(rng);
    s.z2 = s.z1 + 4.0 * (u(rng) - 0.5);
    const auto r = consistency_corrections(s);
    CHECK(r.consistent_deviation < 1e-12);
    CHECK(r.c_uncorrected == c_analytic(s));
    // the literal denominator is the first-order expansion of the consistent one
    const double X = r.denominator_uncorrected - 1.0;
    CHECK(r.denominator_literal ==
          doctest::Approx(1.0 + X * (1.0 + 1.0 / (s.beam.dk_perp * s.beam.dk_perp))).epsilon(1e-13));
    CHECK(r.denominator_consistent ==
          doctest::Approx(r.denominator_uncorrected * r.rho1_divisor_1 * r.rho1_divisor_2).epsilon(1e-13));
    if (s.det.a > 0.5) CHECK(r.literal_deviation > 0.0);
  }
}

TEST_CASE("errors and warnings") {
  auto s = reference();
  s.beam.dk_z = 6.0;
  CHECK_THROWS_AS(c_analytic(s), ParameterError);
  CHECK_THROWS_AS(c_normalized(s, Method::Analytic), ParameterError);
  CHECK_THROWS_AS(rho1(reference(), 0.0, Method::GaussianApprox), ParameterError);
  auto b = reference();
  b.src.statistics = Statistics::Boson;
  CHECK_THROWS_AS(c_normalized(b, Method::GaussianApprox), DomainError);
  CHECK(reference().warnings().empty());
  auto near = reference();
  near.z1 = 10.0;
  CHECK_FALSE(near.warnings().empty());
  auto lowp = reference();
  lowp.beam.k0 = 3.0;
  lowp.beam.dk_z = 0.1;
  lowp.beam.dk_perp = 0.1;
  CHECK(large_p_ratio(lowp, 160.0) < 25.0);
  CHECK_FALSE(lowp.warnings().empty());
}

}
