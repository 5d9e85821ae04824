#include <catch_amalgamated.hpp>

#include <okpp/error.hpp>
#include <okpp/limit_cycle.hpp>

using namespace okpp;
using namespace okpp::cycles;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Reference values from an independent DOP853 integration (rtol 1e-12, event
// located section crossings, dense sampling of |beta|).
constexpr double kPeriodRef = 10.486649453162954;
constexpr double kBetaMaxRef = 0.4528187263836831;
constexpr double kAlphaMinRef = 1.0354178566385568;
constexpr double kAlphaMaxRef = 1.042460422302243;
constexpr double kBetaMaxGap4e3 = 0.30205878698287236;
constexpr double kBetaMaxGap1e3 = 0.14541249170421539;

}  // namespace

TEST_CASE("limit cycle at the reference mu", "[cycles]") {
  const double mu = 13.0 / 120.0;
  const auto c = find_limit_cycle(mu);
  CHECK_THAT(c.period, WithinAbs(kPeriodRef, 1e-6));
  CHECK_THAT(c.betaMax, WithinAbs(kBetaMaxRef, 1e-6));
  CHECK_THAT(c.alphaRange.first, WithinAbs(kAlphaMinRef, 1e-6));
  CHECK_THAT(c.alphaRange.second, WithinAbs(kAlphaMaxRef, 1e-6));
  CHECK(c.rotation == Rotation::Clockwise);
  CHECK(to_string(c.rotation) == "CW");
  const double linear = 40.0 * constants::kPi / (7.0 * std::sqrt(3.0));
  CHECK(std::abs(c.period - linear) < 0.15 * linear);
  CHECK(c.alphaRange.first >= 1.0 - 1e-6);
  CHECK(c.alphaRange.second <= 10.0 / 3.0 + 1e-6);
  REQUIRE(c.samples.size() == c.times.size());
  CHECK_THAT(c.times.back(), WithinAbs(c.period, 1e-12));
  CHECK((c.samples.front() - c.samples.back()).max_abs() < 1e-5);
  for (const auto& s : c.samples) {
    CHECK(s.min() > 0.0);
    CHECK(localization_margin(s, mu) >= 0.0);
  }
  const auto phase = unwrapped_phase(c.samples);
  CHECK_THAT(phase.front() - phase.back(), WithinAbs(2.0 * constants::kPi, 1e-4));
}

TEST_CASE("period converges at fourth order in the step", "[cycles]") {
  LimitCycleOptions o;
  o.relTol = 1e-9;
  std::vector<double> periods;
  for (double dt : {0.1, 0.05, 0.025}) {
    o.dt = dt;
    periods.push_back(find_limit_cycle(13.0 / 120.0, o).period);
  }
  const double ratio = (periods[0] - periods[1]) / (periods[1] - periods[2]);
  CHECK(ratio > 10.0);
  CHECK(ratio < 22.0);
  CHECK_THAT(periods[2], WithinAbs(kPeriodRef, 1e-7));
}

TEST_CASE("amplitude scales like the square root of the distance to mu_H", "[cycles]") {
  const double b4 = find_limit_cycle(7.0 / 60.0 - 4e-3).betaMax;
  const double b1 = find_limit_cycle(7.0 / 60.0 - 1e-3).betaMax;
  CHECK_THAT(b4, WithinRel(kBetaMaxGap4e3, 5e-4));
  CHECK_THAT(b1, WithinRel(kBetaMaxGap1e3, 5e-4));
  CHECK_THAT(b4 / b1, WithinAbs(2.0, 0.2));
}

TEST_CASE("forward Euler cycle is larger than the RK4 one", "[cycles]") {
  LimitCycleOptions o;
  o.dt = 0.025;
  o.scheme = Scheme::ForwardEuler;
  o.relTol = 1e-4;
  const auto euler = find_limit_cycle(13.0 / 120.0, o);
  CHECK(euler.scheme == Scheme::ForwardEuler);
  CHECK(euler.betaMax > kBetaMaxRef * 1.05);
  CHECK(euler.rotation == Rotation::Clockwise);
}

TEST_CASE("cycle search refuses mu outside (0, mu_H)", "[cycles]") {
  CHECK_THROWS_AS(find_limit_cycle(0.2), InvalidArgument);
  CHECK_THROWS_AS(find_limit_cycle(7.0 / 60.0), InvalidArgument);
  CHECK_THROWS_AS(find_limit_cycle(0.0), InvalidArgument);
  LimitCycleOptions o;
  // Close to mu_H the return map contracts too slowly to settle this soon.
  o.maxTransit = 250.0;
  CHECK_THROWS_AS(find_limit_cycle(7.0 / 60.0 - 1e-3, o), NumericalFailure);
}

TEST_CASE("phase unwrapping, resampling and Hausdorff distance", "[cycles]") {
  std::vector<StateVec> circle;
  for (int k = 0; k <= 40; ++k) {
    const double th = -0.3 * k;
    circle.push_back(recompose({1.0, std::polar(0.5, th)}));
  }
  const auto ph = unwrapped_phase(circle);
  for (std::size_t k = 0; k < ph.size(); ++k) CHECK_THAT(ph[k], WithinAbs(-0.3 * k, 1e-12));

  const std::vector<StateVec> seg{StateVec{0, 0, 0}, StateVec{1, 0, 0}};
  const auto pts = resample_by_arclength(seg, 0.1);
  REQUIRE(pts.size() == 11);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK_THAT(pts[k][0], WithinAbs(0.1 * k, 1e-14));

  const std::vector<StateVec> a{StateVec{0, 0, 0}, StateVec{1, 0, 0}};
  const std::vector<StateVec> b{StateVec{0, 0, 0}, StateVec{1, 0, 0}, StateVec{0, 3, 4}};
  CHECK_THAT(hausdorff_distance(a, b), WithinAbs(5.0, 1e-15));
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK_THROWS_AS(hausdorff_distance({}, a), InvalidArgument);
}

TEST_CASE("heteroclinic reference cycle", "[cycles]") {
  const auto ref = reference_cycle_C0();
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(ref.points[ref.vertexIndex[i]] == StateVec::basis(i, 10.0));
  }
  CHECK((ref.points.front() - ref.points.back()).norm() < 1e-3);
  // Arc i runs from 10 e_i to 10 e_{i+1} inside the face where component i+2 vanishes.
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? ref.vertexIndex[i + 1] : ref.points.size() - 1;
    for (std::size_t k = ref.vertexIndex[i] + 1; k < end; ++k) {
      CHECK(std::abs(ref.points[k][(i + 2) % 3]) < 1e-3);
    }
    const StateVec lastOnArc = ref.points[end - 1];
    CHECK((lastOnArc - StateVec::basis((i + 1) % 3, 10.0)).norm() <= ref.ballRadius + 1e-12);
  }
}

TEST_CASE("short continuation family", "[cycles]") {
  const auto fam = cycle_family({0.1, 0.05});
  REQUIRE(fam.cycles.size() == 2);
  CHECK_FALSE(fam.error.has_value());
  CHECK(fam.hausdorffToC0[1] < fam.hausdorffToC0[0]);
  for (const auto& c : fam.cycles) CHECK(c.rotation == Rotation::Clockwise);
  CHECK_THROWS_AS(cycle_family({0.05, 0.1}), InvalidArgument);
  CHECK_THROWS_AS(cycle_family({}), InvalidArgument);

  const auto d = vertex_distances(fam.cycles[1]);
  for (std::size_t i = 0; i < 3; ++i) {
    double best = 1e9;
    for (const auto& s : fam.cycles[1].samples) {
      best = std::min(best, (s - StateVec::basis(i, 10.0)).norm());
    }
    CHECK(d[i] == best);
  }
}
