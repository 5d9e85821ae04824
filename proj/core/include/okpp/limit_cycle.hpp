#pragma once

// Limit cycles of the diffusionless system: Poincare return map on
// {Im beta = 0, Re beta > 0}, continuation in mu, and the mu = 0 heteroclinic
// reference cycle.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "okpp/model.hpp"

namespace okpp::cycles {

enum class Rotation { Clockwise, CounterClockwise, Mixed };

/// Time stepper for the cycle search. ForwardEuler reproduces the homogeneous
/// oscillation of the explicit PDE scheme at the same dt.
enum class Scheme { RK4, ForwardEuler };

std::string to_string(Rotation r);

struct LimitCycleRecord {
  double mu = 0.0;
  double period = 0.0;
  /// Step used for the one-period re-integration (period / (samples - 1)).
  double stepSize = 0.0;
  /// One period starting on the section; the last sample closes the loop.
  std::vector<double> times;
  std::vector<StateVec> samples;
  std::pair<double, double> alphaRange{};
  double betaMax = 0.0;
  Rotation rotation = Rotation::Mixed;
  Scheme scheme = Scheme::RK4;
  /// Number of section crossings used before convergence.
  int crossings = 0;
};

struct LimitCycleOptions {
  double dt = 1e-3;
  double transient = 200.0;
  double maxTransit = 5000.0;
  double relTol = 1e-6;
  Scheme scheme = Scheme::RK4;
  /// Start here instead of the normal-form estimate around 1.
  std::optional<StateVec> initial;
};

/// Throws InvalidArgument unless 0 < mu < mu_H, NumericalFailure when the return
/// map has not settled by maxTransit.
LimitCycleRecord find_limit_cycle(double mu, const LimitCycleOptions& opts = {});

/// (14 sqrt(3)/39)|beta| - |(60/13)(mu_H - mu) - (alpha - 1)|. Limit cycles
/// lie in the band where this is nonnegative.
double localization_margin(const StateVec& v, double mu);

/// Closest approach of the samples to each vertex 10 e_i (Euclidean).
std::array<double, 3> vertex_distances(const LimitCycleRecord& cycle);

/// arg(beta) along the samples, unwrapped.
std::vector<double> unwrapped_phase(const std::vector<StateVec>& samples);

/// Points of a polyline resampled at (at most) the given arc-length spacing,
/// original vertices are not kept.
std::vector<StateVec> resample_by_arclength(const std::vector<StateVec>& curve, double spacing);

/// Symmetric Hausdorff distance between two finite point sets (brute force).
double hausdorff_distance(const std::vector<StateVec>& a, const std::vector<StateVec>& b);

struct ReferenceCycle {
  /// 10 e1, arc to 10 e2, 10 e2, arc to 10 e3, 10 e3, arc to 10 e1, 10 e1.
  std::vector<StateVec> points;
  /// Indices in points where each vertex sits.
  std::array<std::size_t, 3> vertexIndex{};
  double ballRadius = 1e-3;
};

/// Heteroclinic cycle of the mu = 0 system, sampled by integrating each planar
/// face flow along arc length between balls of radius 1e-3 around the vertices.
ReferenceCycle reference_cycle_C0();

struct FamilyResult {
  std::vector<LimitCycleRecord> cycles;
  std::vector<double> hausdorffToC0;
  /// Set when continuation stopped early; cycles holds what was found.
  std::optional<std::string> error;
  std::optional<double> failedMu;
};

struct FamilyOptions {
  LimitCycleOptions cycle;
  /// Arc-length spacing used before the Hausdorff comparison.
  double hausdorffSpacing = 0.02;
};

/// Continuation in decreasing mu, each cycle warm-started from the previous
/// section point. Throws InvalidArgument when muValues is not strictly
/// decreasing inside (0, mu_H).
FamilyResult cycle_family(const std::vector<double>& muValues, const FamilyOptions& opts = {});

}  // namespace okpp::cycles
