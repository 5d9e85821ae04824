#pragma once

// Read-only measurements over simulation output: front speeds and local wave
// train parameters.

#include <cstddef>
#include <optional>
#include <vector>

#include "okpp/limit_cycle.hpp"
#include "okpp/pde.hpp"

namespace okpp::measure {

struct Window {
  double t0 = 0.0;
  double t1 = 0.0;
};

struct SpeedEstimate {
  double speed = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t samples = 0;
};

/// Least-squares slope of position against time over the non-gap samples in
/// [t0, t1]. Throws InvalidArgument with fewer than 10 samples.
SpeedEstimate estimate_speed(const pde::FrontTrace& trace, Window w);

struct Peak {
  /// Sub-sample location (in index units) and value of the fitted parabola.
  double position = 0.0;
  double value = 0.0;
  double prominence = 0.0;
};

/// Local maxima with quadratic refinement whose prominence is at least
/// minProminence.
std::vector<Peak> find_peaks(const std::vector<double>& y, double minProminence = 0.05);

struct WaveTrainOptions {
  double minProminence = 0.05;
  /// Spatial window [x0 - halfSpan, x0 + halfSpan] of the wavelength fit.
  double halfSpan = 100.0;
  /// Total phase change across the spatial window below which the train
  /// counts as homogeneous.
  double homogeneousPhase = 0.05;
};

struct WaveTrainMeasurement {
  double gamma = 0.0;
  /// max |beta| at x0 over the window.
  double betaMax = 0.0;
  /// 2 pi / |d arg(beta) / dx| fitted over the spatial window; +infinity for
  /// a spatially homogeneous train.
  double wavelength = 0.0;
  /// Mean spacing of spatial peaks of u1 when at least two lie in the window.
  std::optional<double> peakWavelength;
  /// Fitted d arg(beta) / dx; equals kappa up to sign conventions.
  double phaseSlope = 0.0;
  double period = 0.0;
  /// Signed 2 pi / wavelength (0 when homogeneous).
  double kappa = 0.0;
  double sigma = 0.0;
  /// sigma / kappa, empty when kappa = 0.
  std::optional<double> speed;
  /// Lag of the best cross-correlation of u1 between x0 and the next node.
  double lag = 0.0;
  double x0 = 0.0;
  double snapshotTime = 0.0;
};

/// Needs probes at x0 and x0 + dx in the result and a snapshot inside the
/// window (the latest one is used for the wavelength). gamma is relative to
/// cycle.betaMax, so the cycle should come from the same time scheme as the
/// simulation. Throws InvalidArgument when either probe is missing or fewer
/// than 3 temporal peaks lie in the window.
WaveTrainMeasurement measure_wave_train(const pde::SimResult& sim, double x0, Window w,
                                        const cycles::LimitCycleRecord& cycle,
                                        const WaveTrainOptions& opts = {});

}  // namespace okpp::measure
