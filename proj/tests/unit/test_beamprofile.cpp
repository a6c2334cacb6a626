#include <cmath>

#include "doctest.h"

#include "antibunch/beamprofile.hpp"

using namespace antibunch;

TEST_SUITE("beamprofile") {

TEST_CASE("radial integral converges to the far-field form") {
  const SourceSpec src;
  const BeamSpec beam;
  const Vec3 k{0.0, 0.0, 20.0};
  for (double tilt : {0.0, 0.02}) {
    CAPTURE(tilt);
    const Vec3 rhat{std::sin(tilt), 0.0, std::cos(tilt)};
    const auto c = radial_integral_check(k, rhat, 200.0, src, beam);
    CHECK(c.far_field);
    CHECK(c.rel_modulus_diff < 0.02);
  }
}

TEST_CASE("backward momenta do not reach the detector") {
  const SourceSpec src;
  const BeamSpec beam;
  CHECK(std::abs(farfield_amplitude({0, 0, -20}, {0, 0, 1}, 200.0, src, beam)) == 0.0);
  CHECK(std::abs(farfield_amplitude({0, 0, 20}, {0, 0, 1}, 200.0, src, beam)) > 0.0);
}

TEST_CASE("amplitude falls as 1/r and peaks along k") {
  const SourceSpec src;
  const BeamSpec beam;
  const Vec3 k{0.0, 0.0, 20.0};
  const double a1 = std::abs(farfield_amplitude(k, {0, 0, 1}, 200.0, src, beam));
  const double a2 = std::abs(farfield_amplitude(k, {0, 0, 1}, 400.0, src, beam));
  CHECK(a1 == doctest::Approx(2.0 * a2).epsilon(1e-12));
  const double t = std::abs(farfield_amplitude(k, {std::sin(0.05), 0, std::cos(0.05)}, 200.0, src, beam));
  CHECK(t < a1);
}

TEST_CASE("angular width scales as 1/(w k) for a wide monochromator") {
  const SourceSpec src;
  BeamSpec beam;
  beam.dk_perp = 10.0;
  for (double k : {10.0, 20.0, 40.0}) {
    beam.k0 = k;
    CAPTURE(k);
    const double hw = angular_half_width({0.0, 0.0, k}, src, beam);
    CHECK(src.w * k * hw == doctest::Approx(1.0).epsilon(0.1));
  }
}

}
