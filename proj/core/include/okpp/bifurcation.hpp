#pragma once

// Bifurcation analysis of the diffusionless system around the positive steady
// state 1: Hopf spectrum, first Lyapunov coefficient, uniqueness certificate
// for positive constant steady states, invasion speeds and the instability
// criterion for general Lotka-Volterra KPP reactions.

#include <cstdint>
#include <optional>
#include <vector>

#include "okpp/model.hpp"

namespace okpp::bifurcation {

struct HopfReport {
  double mu = 0.0;
  /// Critical eigenvalue of mu M - C on the upper branch:
  /// 3(7/60 - mu) + i 7 sqrt(3)/20.
  Complex lambda{};
  /// Eigenvalue carried by z itself, conj(lambda).
  Complex zModeEigenvalue{};
  /// Eigenvalue on span(1), always -1.
  double transverseEigenvalue = 0.0;
  bool stable = false;
  double muH = constants::kMuHopf;
  double muMinus = constants::kMuMinus;
  double muPlus = constants::kMuPlus;
};

/// Linearisation of the reaction at 1 for a given mu: mu M - C.
Circulant3 linearization_at_one(double mu);

/// Throws InvalidArgument for mu <= 0.
HopfReport hopf_analysis(double mu);

/// Ingredients of the Lyapunov-coefficient formula for the default matrices at
/// mu = mu_H. The cubic term of the reaction vanishes identically.
struct LyapunovInputs {
  Mat3 a;
  /// Eigenvalue attached to q (purely imaginary).
  Complex lambda{};
  CVec3 q;
  CVec3 pAdj;
};

LyapunovInputs lyapunov_inputs();

/// Symmetric bilinear part b(v, w) = -w o C v - v o C w.
CVec3 quadratic_form(const CVec3& v, const CVec3& w);

/// First Lyapunov coefficient l1(0) of the Hopf bifurcation at mu_H, evaluated
/// with complex linear solves. Equals -13 sqrt(3)/90.
double first_lyapunov_coefficient();
double first_lyapunov_coefficient(const LyapunovInputs& in);

struct NewtonSweepOptions {
  int seeds = 1000;
  std::uint64_t rngSeed = 0;
  int maxIterations = 100;
  double tolerance = 1e-10;
  double divergenceCutoff = 1e3;
  double boxUpper = 4.0;
};

struct NewtonSweepResult {
  int converged = 0;
  int diverged = 0;
  int stalled = 0;
  /// Converged nonnegative roots, deduplicated to 1e-8.
  std::vector<StateVec> nonnegativeRoots;
};

/// Multi-start Newton iteration on reaction(v) = 0 from seeds drawn uniformly
/// in [0, boxUpper]^3.
NewtonSweepResult newton_sweep(double mu, const NewtonSweepOptions& opts = {});

struct SteadyStateCertificate {
  double mu = 0.0;
  std::vector<StateVec> roots;
  /// 9 a^2 + 10(7 - 13(1-3mu)) a + 100 (1-3mu)^2 as {9, ., .}.
  std::array<double, 3> polyCoeffs{};
  double discriminant = 0.0;
  int discriminantSign = 0;
  NewtonSweepResult sweep;
};

/// Returns {0, 1} with the uniqueness polynomial; throws InconsistencyError if
/// the Newton sweep finds a third nonnegative root.
SteadyStateCertificate positive_steady_states(double mu, const NewtonSweepOptions& opts = {});

struct SpreadingSpeeds {
  /// Speed at which 1 invades 0.
  double zeroInvasion = 2.0;
  /// 2 sqrt(Re lambda_mu); empty when mu >= mu_H (1 is stable).
  std::optional<double> linear;
};

SpreadingSpeeds spreading_speeds(double mu);

/// 7 / (20 sqrt(mu_H - mu)); throws InvalidArgument for mu >= mu_H.
double sherratt_threshold(double mu);

struct LambdaOmegaParams {
  double lambda0 = 0.0;
  double omega0 = 0.0;
  /// Max entry deviation between the similarity transform of mu M - C in the
  /// basis (1, z + conj z, i(z - conj z)) and the block form.
  double basisCheck = 0.0;
  Mat3 transformed;
};

LambdaOmegaParams lambda_omega_params(double mu);

struct InstabilityReport {
  Mat3 linearized;
  bool essentiallyNonnegative = false;
  double spectralAbscissa = 0.0;
  /// L_v v, equal to -(C v) o v.
  StateVec linearizedTimesV;
};

/// For a positive steady state v of L v = (C v) o v builds
/// L_v = L - diag(v) C - diag(C v) and checks that instability excludes
/// essential nonnegativity. Throws InvalidArgument when v is not a positive
/// steady state (residual tolerance 1e-8).
InstabilityReport instability_criterion(const Mat3& l, const Mat3& c, const StateVec& v);

}  // namespace okpp::bifurcation
