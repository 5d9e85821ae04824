#pragma once

// Monotone travelling wave p'' + c p' + p(1 - p) = 0 connecting 1 to 0. Since
// the competition rows sum to 1, p(x - ct) 1 is a front of the full system.

#include <vector>

namespace okpp::front {

struct ScalarFrontProfile {
  double speed = 0.0;
  /// Uniform grid, shifted so that p(0) = 1/2.
  std::vector<double> xi;
  std::vector<double> p;
  std::vector<double> dp;
  /// max |p'' + c p' + p(1-p)| with p'' from central differences.
  double maxResidual = 0.0;
  /// d(ln p)/d(xi) at the right end.
  double tailSlope = 0.0;
};

struct FrontProfileOptions {
  double step = 1e-3;
  /// Initial offset 1 - p along the unstable direction of 1.
  double seed = 1e-6;
  /// Integration stops once p drops below this.
  double pMin = 1e-10;
};

/// Shoots forward from 1 along its unstable eigendirection. Throws
/// InvalidArgument for c < 2, NumericalFailure if monotonicity is lost.
ScalarFrontProfile scalar_front_profile(double c, const FrontProfileOptions& opts = {});

/// Decay rate of the profile at +infinity: (-c + sqrt(c^2 - 4)) / 2.
double tail_rate(double c);

}  // namespace okpp::front
