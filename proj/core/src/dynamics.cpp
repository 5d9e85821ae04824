#include "okpp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "okpp/error.hpp"

namespace okpp::dynamics {

StateVec rk4_step(const StateVec& v, const ModelParams& p, double h) {
  const StateVec k1 = reaction(v, p);
  const StateVec k2 = reaction(v + (0.5 * h) * k1, p);
  const StateVec k3 = reaction(v + (0.5 * h) * k2, p);
  const StateVec k4 = reaction(v + h * k3, p);
  return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const StateVec& v0, const ModelParams& p, double tEnd, double dt,
                     std::size_t sampleEvery) {
  p.validate();
  if (!(dt > 0.0) || !(tEnd > 0.0) || !std::isfinite(tEnd)) {
    throw InvalidArgument("integrate: dt and tEnd must be positive");
  }
  if (sampleEvery == 0) throw InvalidArgument("integrate: sampleEvery must be >= 1");
  if (!v0.finite()) throw InvalidArgument("integrate: non-finite initial state");

  const bool checkSign = v0.nonnegative();
  const auto steps = static_cast<std::size_t>(std::ceil(tEnd / dt - 1e-9));
  Trajectory tr;
  tr.mu = p.mu;
  tr.stepSize = dt;
  tr.times.reserve(steps / sampleEvery + 2);
  tr.states.reserve(steps / sampleEvery + 2);
  tr.times.push_back(0.0);
  tr.states.push_back(v0);

  StateVec v = v0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * dt;
    const double h = std::min(dt, tEnd - t0);
    const double t = k == steps ? tEnd : static_cast<double>(k) * dt;
    try {
      v = rk4_step(v, p, h);
    } catch (const NumericalFailure&) {
      v = StateVec::constant(std::nan(""));
    }
    if (!v.finite() || (checkSign && !v.nonnegative(1e-9))) {
      std::ostringstream os;
      os << "integrate: state left the admissible set at t = " << t;
      throw NumericalFailure(os.str());
    }
    if (k % sampleEvery == 0 || k == steps) {
      tr.times.push_back(t);
      tr.states.push_back(v);
    }
  }
  return tr;
}

}  // namespace okpp::dynamics
