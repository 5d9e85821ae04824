#pragma once

// Explicit finite-difference solver for u_t = u_xx + f(u) on [-L, L] with
// zero-flux ends, plus the online front trackers used while it runs.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "okpp/model.hpp"

namespace okpp::pde {

/// Node-centred uniform grid on [-L, L].
struct Grid1D {
  double halfLength = 2000.0;
  double dx = 0.5;

  std::size_t size() const;
  double x(std::size_t i) const { return -halfLength + static_cast<double>(i) * dx; }
  /// Index of the node nearest to x (clamped).
  std::size_t nearest(double x) const;
  void validate() const;
};

struct Field {
  std::vector<StateVec> values;

  Field() = default;
  explicit Field(std::size_t n, StateVec fill = {}) : values(n, fill) {}
  std::size_t size() const { return values.size(); }
  StateVec& operator[](std::size_t i) { return values[i]; }
  const StateVec& operator[](std::size_t i) const { return values[i]; }
};

struct InitialCondition {
  /// "paper" (value on |x| <= halfWidth, 0 elsewhere), "constant" or "zero".
  std::string preset = "paper";
  StateVec value{1.01, 1.01, 0.99};
  double halfWidth = 5.0;
};

struct SimConfig {
  double mu = constants::kMuReference;
  Grid1D grid;
  double dt = 0.025;
  double tEnd = 1200.0;
  double snapshotEvery = 240.0;
  InitialCondition init;
  /// Level tracked on component levelComponent (0-based).
  double levelValue = 0.9;
  std::size_t levelComponent = 0;
  double envelopeEps = 0.1;
  /// Sliding-window width of the envelope tracker.
  double envelopeWindow = 12.0;
  /// Spacing of front-trace samples.
  double traceEvery = 1.0;
  /// Positions recorded at every step (nearest node).
  std::vector<double> probes;
  std::size_t workers = 1;

  static constexpr double kCflSafety = 0.9;
  /// Throws InvalidArgument on any violated constraint, including the CFL bound
  /// dt <= 0.9 dx^2 / 2.
  void validate() const;
};

/// Initial field for cfg.init on cfg.grid.
Field initial_field(const SimConfig& cfg);

/// Discrete Laplacian with mirrored ghost nodes; component k of node i.
StateVec laplacian(const Field& f, std::size_t i, double dx);

/// Trapezoid weights (dx/2 at the ends) under which the Neumann Laplacian
/// integrates to zero.
double weighted_mass(const std::vector<double>& nodal, double dx);

/// One forward-Euler step. Throws InvalidArgument if the CFL bound fails and
/// NumericalFailure (naming the node) on non-finite or negative values.
Field step(const Field& f, const SimConfig& cfg);

enum class TraceKind { LevelSet, OscEnvelope };

std::string to_string(TraceKind k);

struct FrontTrace {
  TraceKind kind = TraceKind::LevelSet;
  std::vector<double> times;
  /// Empty where nothing was found at that time.
  std::vector<std::optional<double>> positions;

  void push(double t, std::optional<double> x);
};

/// Rightmost sign change of u_component - level, linearly interpolated. Empty
/// when no crossing exists or when some component at the right wall has
/// reached the level (the front has left the domain).
std::optional<double> level_set_position(const Field& f, const Grid1D& g, std::size_t component,
                                         double level);

/// Right edge of the oscillating region. Keeps, per node, the max of
/// |u - 1|_inf and the min of the mean component over buckets of width
/// traceEvery, and looks at the last ceil(window / traceEvery) buckets. A node
/// oscillates when its deviation exceeds eps while its mean stayed above
/// 1 - eps/2. This excludes the fronts to 0, where the deviation is at least
/// 1 - mean and a slight asymmetry between components would otherwise pass.
class EnvelopeTracker {
 public:
  EnvelopeTracker(std::size_t nodes, double eps, std::size_t buckets);

  /// Folds the current field into the open bucket.
  void observe(const Field& f);
  /// Closes the open bucket and returns the position of the rightmost
  /// oscillating node, empty while the window is not full or none oscillates.
  std::optional<double> close_bucket(const Grid1D& g);

 private:
  std::size_t nodes_;
  double eps_;
  std::size_t buckets_;
  std::size_t filled_ = 0;
  std::size_t head_ = 0;
  std::vector<double> ring_;
  std::vector<double> ringAlpha_;
  std::vector<double> open_;
  std::vector<double> openAlpha_;
};

struct Snapshot {
  double t = 0.0;
  Field field;
};

struct ProbeSeries {
  std::vector<double> x;
  std::vector<double> times;
  /// values[probe][sample]
  std::vector<std::vector<StateVec>> values;
};

struct SimResult {
  SimConfig config;
  std::vector<Snapshot> snapshots;
  FrontTrace levelTrace;
  FrontTrace envelopeTrace;
  ProbeSeries probes;
};

/// Runs cfg to tEnd. Snapshots at t = 0, snapshotEvery, ... and tEnd; traces
/// every traceEvery.
SimResult simulate(const SimConfig& cfg);

/// Level-set trace over stored snapshots.
FrontTrace track_level_set(const std::vector<Snapshot>& series, const Grid1D& g,
                           std::size_t component, double level);

/// Envelope trace over stored snapshots, one bucket per snapshot; window is in
/// snapshots.
FrontTrace detect_oscillation_front(const std::vector<Snapshot>& series, const Grid1D& g,
                                    double eps, std::size_t window);

}  // namespace okpp::pde
