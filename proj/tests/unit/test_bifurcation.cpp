#include <catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Dense>

#include <okpp/bifurcation.hpp>
#include <okpp/error.hpp>

using namespace okpp;
using namespace okpp::bifurcation;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("Hopf eigenvalue closed form", "[bifurcation]") {
  const auto h = hopf_analysis(7.0 / 60.0);
  CHECK_THAT(h.lambda.real(), WithinAbs(0.0, 1e-15));
  CHECK_THAT(h.lambda.imag(), WithinAbs(7.0 * std::sqrt(3.0) / 20.0, 1e-15));
  CHECK_THAT(hopf_analysis(13.0 / 120.0).lambda.real(), WithinAbs(0.025, 1e-15));
  const auto stable = hopf_analysis(1.0);
  CHECK(stable.lambda.real() < 0.0);
  CHECK(stable.stable);
  CHECK_FALSE(hopf_analysis(0.1).stable);
  CHECK(hopf_analysis(0.15).stable);
  CHECK(std::conj(h.lambda) == h.zModeEigenvalue);
  CHECK(h.transverseEigenvalue == -1.0);
  CHECK_THROWS_AS(hopf_analysis(0.0), InvalidArgument);
  CHECK_THROWS_AS(hopf_analysis(-1.0), InvalidArgument);
}

TEST_CASE("Hopf eigenvalue matches a dense solver", "[bifurcation]") {
  for (double mu : {0.01, 0.1, 13.0 / 120.0, 0.5, 1.0}) {
    const auto h = hopf_analysis(mu);
    Eigen::EigenSolver<Mat3> es(linearization_at_one(mu).expand());
    double best = 1e9;
    for (int k = 0; k < 3; ++k) best = std::min(best, std::abs(es.eigenvalues()(k) - h.lambda));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("Lyapunov coefficient and its intermediates", "[bifurcation]") {
  const double expected = -13.0 * std::sqrt(3.0) / 90.0;
  CHECK_THAT(first_lyapunov_coefficient(), WithinAbs(expected, 1e-12));

  const CVec3 z = fourier_mode();
  const CVec3 bzzbar = quadratic_form(z, z.conjugate());
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(bzzbar(i) - Complex{7.0 / 30.0, 0.0}) < 1e-14);
  }
  const CVec3 bzz = quadratic_form(z, z);
  const CVec3 rhs = -(14.0 * std::sqrt(3.0) / 30.0) * cube_root_of_unity() * z.conjugate();
  CHECK((bzz - rhs).norm() < 1e-14);

  const auto in = lyapunov_inputs();
  CHECK(std::abs(in.lambda.real()) < 1e-15);
  CHECK((in.a.cast<Complex>() * in.q - in.lambda * in.q).norm() < 1e-14);
  CHECK((in.a.transpose().cast<Complex>() * in.pAdj + in.lambda * in.pAdj).norm() < 1e-14);
  CHECK(std::abs(in.pAdj.dot(in.q) - 1.0) < 1e-14);
}

TEST_CASE("Sherratt threshold against 50-digit arithmetic", "[bifurcation]") {
  // 7 / (20 sqrt(7/60 - 13/120)) = 7 sqrt(120) / 20 = 7 sqrt(30) / 10.
  const Big gap = Big(7) / 60 - Big(13) / 120;
  const Big threshold = Big(7) / (20 * sqrt(gap));
  const Big closed = 7 * sqrt(Big(30)) / 10;
  CHECK(abs(threshold - closed) < Big("1e-45"));
  CHECK_THAT(sherratt_threshold(13.0 / 120.0), WithinRel(threshold.convert_to<double>(), 1e-13));
  CHECK_THROWS_AS(sherratt_threshold(7.0 / 60.0), InvalidArgument);
  CHECK_THROWS_AS(sherratt_threshold(0.2), InvalidArgument);
  CHECK(sherratt_threshold(7.0 / 60.0 - 1e-10) > 1e4);
  double previous = sherratt_threshold(0.11);
  for (double mu : {0.1, 0.08, 0.05, 0.01}) {
    const double t = sherratt_threshold(mu);
    CHECK(t < previous);
    previous = t;
  }
}

TEST_CASE("spreading speeds", "[bifurcation]") {
  const auto s = spreading_speeds(13.0 / 120.0);
  CHECK(s.zeroInvasion == 2.0);
  REQUIRE(s.linear.has_value());
  CHECK_THAT(*s.linear, WithinAbs(1.0 / std::sqrt(10.0), 1e-15));
  CHECK(*spreading_speeds(7.0 / 60.0 - 1e-12).linear < 1e-5);
  CHECK_FALSE(spreading_speeds(7.0 / 60.0).linear.has_value());
  CHECK_FALSE(spreading_speeds(0.5).linear.has_value());
  CHECK(spreading_speeds(0.5).zeroInvasion == 2.0);
}

TEST_CASE("lambda-omega block form", "[bifurcation]") {
  const auto lo = lambda_omega_params(13.0 / 120.0);
  CHECK_THAT(lo.lambda0, WithinAbs(0.025, 1e-15));
  CHECK_THAT(lo.omega0, WithinAbs(-7.0 * std::sqrt(3.0) / 20.0, 1e-15));
  CHECK(lo.basisCheck < 1e-12);
  CHECK_THAT(lo.transformed(0, 0), WithinAbs(-1.0, 1e-14));
  CHECK_THAT(lambda_omega_params(7.0 / 60.0).lambda0, WithinAbs(0.0, 1e-15));
}

TEST_CASE("steady-state certificate", "[bifurcation]") {
  NewtonSweepOptions fast;
  fast.seeds = 200;
  const auto ref = positive_steady_states(13.0 / 120.0, fast);
  REQUIRE(ref.roots.size() == 2);
  CHECK(ref.roots[0] == StateVec::constant(0.0));
  CHECK(ref.roots[1] == StateVec::constant(1.0));

  const auto low = positive_steady_states(0.05, fast);
  CHECK(low.discriminantSign < 0);
  CHECK(low.discriminant < 0.0);

  // At mu = 0.5 the discriminant is positive but both roots of the quadratic
  // are negative: positive value at 0 and positive slope 10(7 - 13(1 - 3 mu)).
  const auto high = positive_steady_states(0.5, fast);
  CHECK(high.discriminantSign > 0);
  const auto& q = high.polyCoeffs;
  CHECK(q[0] == 9.0);
  CHECK_THAT(q[1], WithinAbs(10.0 * (7.0 - 13.0 * (1.0 - 1.5)), 1e-12));
  CHECK_THAT(q[2], WithinAbs(100.0 * 0.25, 1e-12));
  CHECK(q[1] > 0.0);
  CHECK(q[2] > 0.0);
  CHECK(high.sweep.nonnegativeRoots.size() <= 2);
}

TEST_CASE("instability criterion at 1", "[bifurcation]") {
  const Mat3 c = ModelParams{}.competition.expand();
  const auto unstable = instability_criterion(
      ModelParams::with_mu(13.0 / 120.0).linear_part().expand(), c, StateVec::constant(1.0));
  CHECK(unstable.spectralAbscissa > 0.0);
  CHECK_FALSE(unstable.essentiallyNonnegative);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(unstable.linearizedTimesV[i] < 0.0);
    CHECK_THAT(unstable.linearizedTimesV[i], WithinAbs(-1.0, 1e-14));
  }
  const auto stable = instability_criterion(ModelParams::with_mu(1.0).linear_part().expand(), c,
                                            StateVec::constant(1.0));
  // The Hopf pair sits at 3(7/60 - 1) < -1, so the transverse -1 leads.
  CHECK_THAT(stable.spectralAbscissa, WithinAbs(-1.0, 1e-12));
  CHECK_THROWS_AS(instability_criterion(ModelParams{}.linear_part().expand(), c,
                                        StateVec::constant(2.0)),
                  InvalidArgument);
}
