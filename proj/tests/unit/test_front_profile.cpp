#include <catch_amalgamated.hpp>

#include <okpp/error.hpp>
#include <okpp/front_profile.hpp>

using namespace okpp;
using namespace okpp::front;
using Catch::Matchers::WithinAbs;

TEST_CASE("minimal-speed front", "[front]") {
  const auto prof = scalar_front_profile(2.0);
  REQUIRE(prof.p.size() > 100);
  CHECK(prof.maxResidual < 1e-6);
  for (std::size_t k = 1; k < prof.p.size(); ++k) CHECK(prof.p[k] < prof.p[k - 1]);
  CHECK(prof.p.front() > 1.0 - 1e-4);
  CHECK(prof.p.back() < 1e-4);
  for (double v : prof.p) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
  // Double root -1 at c = 2: ln p ~ ln(a + b xi) - xi, slope -1 + b/(a + b xi).
  CHECK(prof.tailSlope > -1.0);
  CHECK(prof.tailSlope < -0.9);
  FrontProfileOptions deeper;
  deeper.pMin = 1e-14;
  CHECK(scalar_front_profile(2.0, deeper).tailSlope < prof.tailSlope);
}

TEST_CASE("residual of the returned profile", "[front]") {
  // Recomputed here from p alone with central differences.
  const auto prof = scalar_front_profile(2.5);
  const double h = prof.xi[1] - prof.xi[0];
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < prof.p.size(); ++k) {
    const double d2 = (prof.p[k + 1] - 2.0 * prof.p[k] + prof.p[k - 1]) / (h * h);
    const double d1 = (prof.p[k + 1] - prof.p[k - 1]) / (2.0 * h);
    worst = std::max(worst, std::abs(d2 + 2.5 * d1 + prof.p[k] * (1.0 - prof.p[k])));
  }
  CHECK(worst < 1e-6);
  CHECK_THAT(prof.maxResidual, WithinAbs(worst, 1e-9));
}

TEST_CASE("tail rate for c = 3", "[front]") {
  // Smaller-magnitude root of r^2 + 3 r + 1 = 0.
  const double root = (-3.0 + std::sqrt(9.0 - 4.0)) / 2.0;
  CHECK_THAT(tail_rate(3.0), WithinAbs(root, 1e-15));
  CHECK_THAT(scalar_front_profile(3.0).tailSlope, WithinAbs(root, 1e-6));
  CHECK_THAT(tail_rate(2.0), WithinAbs(-1.0, 1e-15));
}

TEST_CASE("speeds below 2 are refused", "[front]") {
  CHECK_THROWS_AS(scalar_front_profile(1.5), InvalidArgument);
  CHECK_THROWS_AS(scalar_front_profile(std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(tail_rate(1.9), InvalidArgument);
  FrontProfileOptions bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(scalar_front_profile(2.0, bad), InvalidArgument);
}
