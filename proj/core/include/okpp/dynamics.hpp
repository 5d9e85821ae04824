#pragma once

// Fixed-step RK4 integration of the diffusionless system.

#include <cstddef>
#include <vector>

#include "okpp/model.hpp"

namespace okpp::dynamics {

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVec> states;
  double mu = 0.0;
  double stepSize = 0.0;
};

/// One classical RK4 step of size h.
StateVec rk4_step(const StateVec& v, const ModelParams& p, double h);

/// Integrates from v0 over [0, tEnd] with ceil(tEnd/dt) steps of size dt (the
/// last one shortened to land on tEnd). Stores every sampleEvery-th state plus
/// the final one. Throws NumericalFailure with the time of failure if the state
/// becomes non-finite, or negative beyond 1e-9 when v0 >= 0. A non-finite v0
/// or non-positive dt, tEnd is an InvalidArgument.
Trajectory integrate(const StateVec& v0, const ModelParams& p, double tEnd, double dt,
                     std::size_t sampleEvery = 1);

}  // namespace okpp::dynamics
