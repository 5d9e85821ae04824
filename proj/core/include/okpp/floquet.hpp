#pragma once

// Floquet analysis of a limit cycle for the linearised reaction-diffusion
// problem at spatial wavenumber omega: u' = (A(t) - omega^2) u.

#include <array>
#include <optional>

#include "okpp/limit_cycle.hpp"
#include "okpp/model.hpp"

namespace okpp::floquet {

struct FloquetReport {
  double omega = 0.0;
  double period = 0.0;
  /// Monodromy of u' = A(t) u, A(t) the jacobian along the cycle.
  Mat3 monodromy;
  /// Sorted by decreasing modulus.
  std::array<Complex, 3> multipliers{};
  /// ln|m| / period for the omega = 0 problem, same order.
  std::array<double, 3> exponents{};
  /// Index of the multiplier closest to 1.
  std::size_t trivialIndex = 0;
  /// exponents - omega^2.
  std::array<double, 3> omegaShifted{};
  /// Exponents from integrating the omega problem itself (omega != 0 only).
  std::optional<std::array<double, 3>> omegaDirect;
};

/// Integrates the variational equation with RK4 over one period using the
/// cycle's own step. Throws InvalidArgument if the samples do not span exactly
/// one period or do not close up, InconsistencyError if the direct and shifted
/// exponents disagree beyond 1e-6.
FloquetReport floquet(const cycles::LimitCycleRecord& cycle, const ModelParams& p, double omega);

}  // namespace okpp::floquet
