#include "okpp/floquet.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "okpp/error.hpp"

namespace okpp::floquet {

namespace {

struct Augmented {
  StateVec v;
  Mat3 phi;
};

Augmented rhs(const Augmented& y, const ModelParams& p, double shift) {
  return {reaction(y.v, p), (jacobian(y.v, p) - shift * Mat3::Identity()) * y.phi};
}

Augmented axpy(const Augmented& y, double h, const Augmented& k) {
  return {y.v + h * k.v, y.phi + h * k.phi};
}

Mat3 monodromy(const cycles::LimitCycleRecord& cycle, const ModelParams& p, double shift) {
  Augmented y{cycle.samples.front(), Mat3::Identity()};
  const double h = cycle.stepSize;
  for (std::size_t k = 1; k < cycle.samples.size(); ++k) {
    const Augmented k1 = rhs(y, p, shift);
    const Augmented k2 = rhs(axpy(y, 0.5 * h, k1), p, shift);
    const Augmented k3 = rhs(axpy(y, 0.5 * h, k2), p, shift);
    const Augmented k4 = rhs(axpy(y, h, k3), p, shift);
    y.v += (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    y.phi += (h / 6.0) * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
  }
  if (!y.phi.allFinite()) throw NumericalFailure("floquet: monodromy is not finite");
  return y.phi;
}

std::array<Complex, 3> sorted_multipliers(const Mat3& m) {
  Eigen::EigenSolver<Mat3> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("floquet: eigensolver failed");
  std::array<Complex, 3> out{solver.eigenvalues()(0), solver.eigenvalues()(1),
                             solver.eigenvalues()(2)};
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return a.imag() > b.imag();
  });
  return out;
}

std::array<double, 3> exponents_of(const std::array<Complex, 3>& m, double period) {
  return {std::log(std::abs(m[0])) / period, std::log(std::abs(m[1])) / period,
          std::log(std::abs(m[2])) / period};
}

}  // namespace

FloquetReport floquet(const cycles::LimitCycleRecord& cycle, const ModelParams& p, double omega) {
  p.validate();
  if (!std::isfinite(omega)) throw InvalidArgument("floquet: omega must be finite");
  if (cycle.samples.size() < 3 || cycle.samples.size() != cycle.times.size() ||
      !(cycle.period > 0.0) || !(cycle.stepSize > 0.0)) {
    throw InvalidArgument("floquet: malformed cycle record");
  }
  const double span = cycle.stepSize * static_cast<double>(cycle.samples.size() - 1);
  if (std::abs(span - cycle.period) > 1e-9 * cycle.period ||
      std::abs(cycle.times.back() - cycle.period) > 1e-9 * cycle.period) {
    std::ostringstream os;
    os << "floquet: samples span " << span << " but period is " << cycle.period;
    throw InvalidArgument(os.str());
  }
  const double gap = (cycle.samples.back() - cycle.samples.front()).max_abs();
  if (gap > 1e-4 * std::max(1.0, cycle.samples.front().max_abs())) {
    std::ostringstream os;
    os << "floquet: cycle does not close (gap " << gap << "), wrong mu or period?";
    throw InvalidArgument(os.str());
  }

  FloquetReport r;
  r.omega = omega;
  r.period = cycle.period;
  r.monodromy = monodromy(cycle, p, 0.0);
  r.multipliers = sorted_multipliers(r.monodromy);
  r.exponents = exponents_of(r.multipliers, r.period);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(r.multipliers[i] - 1.0) < std::abs(r.multipliers[best] - 1.0)) best = i;
  }
  r.trivialIndex = best;
  const double w2 = omega * omega;
  for (std::size_t i = 0; i < 3; ++i) r.omegaShifted[i] = r.exponents[i] - w2;

  if (omega != 0.0) {
    const auto direct = exponents_of(sorted_multipliers(monodromy(cycle, p, w2)), r.period);
    for (std::size_t i = 0; i < 3; ++i) {
      if (std::abs(direct[i] - r.omegaShifted[i]) > 1e-6 * std::max(1.0, w2)) {
        std::ostringstream os;
        os << "floquet: direct exponent " << direct[i] << " disagrees with shifted "
           << r.omegaShifted[i];
        throw InconsistencyError(os.str());
      }
    }
    r.omegaDirect = direct;
  }
  return r;
}

}  // namespace okpp::floquet
