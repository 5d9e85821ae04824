#include "okpp/bifurcation.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "okpp/error.hpp"
#include "okpp/linalg.hpp"

namespace okpp::bifurcation {

namespace {

void require_positive_mu(double mu, const char* where) {
  if (!std::isfinite(mu) || mu <= 0.0) {
    std::ostringstream os;
    os << where << ": mu must be positive, got " << mu;
    throw InvalidArgument(os.str());
  }
}

const double kOmegaHopf = 7.0 * std::sqrt(3.0) / 20.0;

}  // namespace

Circulant3 linearization_at_one(double mu) {
  const ModelParams p = ModelParams::with_mu(mu);
  return mu * p.mutation - p.competition;
}

HopfReport hopf_analysis(double mu) {
  require_positive_mu(mu, "hopf_analysis");
  const auto pairs = circulant_eigenpairs(linearization_at_one(mu));
  HopfReport r;
  r.mu = mu;
  r.zModeEigenvalue = pairs[1].value;
  r.lambda = std::conj(r.zModeEigenvalue);
  r.transverseEigenvalue = pairs[0].value.real();
  r.stable = r.lambda.real() < 0.0;
  return r;
}

CVec3 quadratic_form(const CVec3& v, const CVec3& w) {
  const CMat3 c = ModelParams{}.competition.expand().cast<Complex>();
  return -(w.cwiseProduct(c * v) + v.cwiseProduct(c * w));
}

LyapunovInputs lyapunov_inputs() {
  LyapunovInputs in;
  in.a = linearization_at_one(constants::kMuHopf).expand();
  in.q = fourier_mode();
  in.pAdj = in.q;
  in.lambda = in.q.dot(in.a.cast<Complex>() * in.q);
  return in;
}

double first_lyapunov_coefficient() { return first_lyapunov_coefficient(lyapunov_inputs()); }

double first_lyapunov_coefficient(const LyapunovInputs& in) {
  const CMat3 a = in.a.cast<Complex>();
  const CVec3& q = in.q;
  const CVec3 qbar = q.conjugate();
  const CVec3& p = in.pAdj;
  if (std::abs(in.lambda) == 0.0) throw InvalidArgument("first_lyapunov_coefficient: lambda = 0");

  // The trilinear part of the reaction is zero.
  const CVec3 bqqbar = quadratic_form(q, qbar);
  const CVec3 bqq = quadratic_form(q, q);
  const CVec3 s1 = linalg::solve(a, bqqbar);
  const CVec3 s2 = linalg::solve(2.0 * in.lambda * CMat3::Identity() - a, bqq);
  const Complex bracket =
      -2.0 * p.dot(quadratic_form(q, s1)) + p.dot(quadratic_form(qbar, s2));
  return bracket.real() / (2.0 * std::abs(in.lambda));
}

NewtonSweepResult newton_sweep(double mu, const NewtonSweepOptions& opts) {
  require_positive_mu(mu, "newton_sweep");
  if (opts.seeds <= 0 || opts.maxIterations <= 0 || !(opts.tolerance > 0.0)) {
    throw InvalidArgument("newton_sweep: invalid options");
  }
  const ModelParams p = ModelParams::with_mu(mu);
  std::mt19937_64 rng(opts.rngSeed);
  std::uniform_real_distribution<double> uni(0.0, opts.boxUpper);

  NewtonSweepResult out;
  for (int s = 0; s < opts.seeds; ++s) {
    StateVec v{uni(rng), uni(rng), uni(rng)};
    bool done = false, blown = false;
    for (int it = 0; it < opts.maxIterations; ++it) {
      const StateVec f = reaction(v, p);
      if (f.max_abs() <= opts.tolerance) {
        done = true;
        break;
      }
      const Eigen::FullPivLU<Mat3> lu(jacobian(v, p));
      if (!lu.isInvertible()) break;
      v -= StateVec::from_eigen(lu.solve(f.eigen()));
      if (!v.finite() || v.norm() > opts.divergenceCutoff) {
        blown = true;
        break;
      }
    }
    if (blown) {
      ++out.diverged;
      continue;
    }
    if (!done) {
      done = reaction(v, p).max_abs() <= opts.tolerance;
    }
    if (!done) {
      ++out.stalled;
      continue;
    }
    ++out.converged;
    if (!v.nonnegative(1e-8)) continue;
    const bool seen = std::any_of(out.nonnegativeRoots.begin(), out.nonnegativeRoots.end(),
                                  [&](const StateVec& r) { return (r - v).max_abs() < 1e-8; });
    if (!seen) out.nonnegativeRoots.push_back(v);
  }
  std::sort(out.nonnegativeRoots.begin(), out.nonnegativeRoots.end(),
            [](const StateVec& x, const StateVec& y) { return x.u < y.u; });
  return out;
}

SteadyStateCertificate positive_steady_states(double mu, const NewtonSweepOptions& opts) {
  require_positive_mu(mu, "positive_steady_states");
  SteadyStateCertificate cert;
  cert.mu = mu;
  cert.roots = {StateVec::constant(0.0), StateVec::constant(1.0)};
  const double k = 1.0 - 3.0 * mu;
  cert.polyCoeffs = {9.0, 10.0 * (7.0 - 13.0 * k), 100.0 * k * k};
  cert.discriminant =
      cert.polyCoeffs[1] * cert.polyCoeffs[1] - 4.0 * cert.polyCoeffs[0] * cert.polyCoeffs[2];
  cert.discriminantSign = (cert.discriminant > 0.0) - (cert.discriminant < 0.0);

  cert.sweep = newton_sweep(mu, opts);
  for (const StateVec& r : cert.sweep.nonnegativeRoots) {
    const bool known = std::any_of(cert.roots.begin(), cert.roots.end(),
                                   [&](const StateVec& x) { return (x - r).max_abs() < 1e-8; });
    if (!known) {
      std::ostringstream os;
      os << "positive_steady_states: Newton found an extra nonnegative root (" << r[0] << ", "
         << r[1] << ", " << r[2] << ") at mu = " << mu;
      throw InconsistencyError(os.str());
    }
  }
  return cert;
}

SpreadingSpeeds spreading_speeds(double mu) {
  require_positive_mu(mu, "spreading_speeds");
  SpreadingSpeeds s;
  if (mu < constants::kMuHopf) s.linear = 2.0 * std::sqrt(3.0 * (constants::kMuHopf - mu));
  return s;
}

double sherratt_threshold(double mu) {
  require_positive_mu(mu, "sherratt_threshold");
  if (mu >= constants::kMuHopf) {
    throw InvalidArgument("sherratt_threshold: needs mu < 7/60");
  }
  return 7.0 / (20.0 * std::sqrt(constants::kMuHopf - mu));
}

LambdaOmegaParams lambda_omega_params(double mu) {
  require_positive_mu(mu, "lambda_omega_params");
  LambdaOmegaParams out;
  out.lambda0 = 3.0 * (constants::kMuHopf - mu);
  out.omega0 = -kOmegaHopf;

  const CVec3 z = fourier_mode();
  Mat3 basis;
  basis.col(0) = Eigen::Vector3d::Ones();
  basis.col(1) = (z + z.conjugate()).real();
  basis.col(2) = (Complex{0.0, 1.0} * (z - z.conjugate())).real();
  const Mat3 a = linearization_at_one(mu).expand();
  out.transformed = basis.inverse() * a * basis;

  Mat3 block = Mat3::Zero();
  block(0, 0) = -1.0;
  block(1, 1) = block(2, 2) = out.lambda0;
  block(1, 2) = -out.omega0;
  block(2, 1) = out.omega0;
  out.basisCheck = (out.transformed - block).cwiseAbs().maxCoeff();
  return out;
}

InstabilityReport instability_criterion(const Mat3& l, const Mat3& c, const StateVec& v) {
  if (!v.finite() || v.min() <= 0.0) {
    throw InvalidArgument("instability_criterion: v must be positive");
  }
  const Eigen::Vector3d x = v.eigen();
  const Eigen::Vector3d cx = c * x;
  const double residual = (l * x - cx.cwiseProduct(x)).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-8)) {
    std::ostringstream os;
    os << "instability_criterion: v is not a steady state (residual " << residual << ")";
    throw InvalidArgument(os.str());
  }

  InstabilityReport r;
  r.linearized = l - x.asDiagonal() * c;
  r.linearized -= cx.asDiagonal();
  r.essentiallyNonnegative = true;
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 3; ++k)
      if (i != k && r.linearized(i, k) < 0.0) r.essentiallyNonnegative = false;
  r.spectralAbscissa = linalg::spectral_abscissa(r.linearized);
  r.linearizedTimesV = StateVec::from_eigen(r.linearized * x);

  if (r.spectralAbscissa >= 0.0 && r.essentiallyNonnegative) {
    throw InconsistencyError(
        "instability_criterion: unstable steady state with essentially nonnegative L_v");
  }
  return r;
}

}  // namespace okpp::bifurcation
