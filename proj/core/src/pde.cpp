#include "okpp/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "okpp/error.hpp"

namespace okpp::pde {

std::size_t Grid1D::size() const {
  return static_cast<std::size_t>(std::llround(2.0 * halfLength / dx)) + 1;
}

std::size_t Grid1D::nearest(double x) const {
  const double k = std::round((x + halfLength) / dx);
  const double hi = static_cast<double>(size() - 1);
  return static_cast<std::size_t>(std::clamp(k, 0.0, hi));
}

void Grid1D::validate() const {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw InvalidArgument("grid: dx must be positive");
  if (!(halfLength > 0.0) || !std::isfinite(halfLength)) {
    throw InvalidArgument("grid: L must be positive");
  }
  if (2.0 * halfLength / dx < 2.0) throw InvalidArgument("grid: need at least 3 nodes");
  if (2.0 * halfLength / dx > 1e8) throw InvalidArgument("grid: too many nodes");
}

namespace {

bool is_multiple(double value, double of) {
  const double k = std::round(value / of);
  return k >= 1.0 && std::abs(k * of - value) <= 1e-9 * std::max(1.0, std::abs(value));
}

}  // namespace

void SimConfig::validate() const {
  ModelParams::with_mu(mu).validate();
  grid.validate();
  std::ostringstream os;
  if (!(dt > 0.0)) os << "dt must be positive; ";
  else if (dt > kCflSafety * grid.dx * grid.dx / 2.0) {
    os << "dt = " << dt << " violates the stability bound dt <= " << kCflSafety
       << " dx^2/2 = " << kCflSafety * grid.dx * grid.dx / 2.0 << "; ";
  } else {
    if (!(tEnd > 0.0) || !is_multiple(tEnd, dt)) os << "tEnd must be a positive multiple of dt; ";
    if (!(snapshotEvery > 0.0) || !is_multiple(snapshotEvery, dt)) {
      os << "snapshotEvery must be a positive multiple of dt; ";
    }
    if (!(traceEvery > 0.0) || !is_multiple(traceEvery, dt)) {
      os << "traceEvery must be a positive multiple of dt; ";
    }
  }
  if (!(levelValue > 0.0 && levelValue < 1.0)) os << "level must lie in (0, 1); ";
  if (levelComponent > 2) os << "level component must be 0, 1 or 2; ";
  if (!(envelopeEps > 0.0)) os << "eps must be positive; ";
  if (!(envelopeWindow > 0.0)) os << "envelope window must be positive; ";
  if (workers == 0) os << "workers must be >= 1; ";
  for (double x : probes) {
    if (!(std::abs(x) <= grid.halfLength)) os << "probe " << x << " outside the grid; ";
  }
  if (init.preset != "paper" && init.preset != "constant" && init.preset != "zero") {
    os << "unknown initial preset '" << init.preset << "'; ";
  }
  if (!init.value.finite() || !init.value.nonnegative()) {
    os << "initial value must be finite and nonnegative; ";
  }
  if (!(init.halfWidth >= 0.0)) os << "initial halfWidth must be nonnegative; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw InvalidArgument("config: " + msg.substr(0, msg.size() - 2));
}

Field initial_field(const SimConfig& cfg) {
  const std::size_t n = cfg.grid.size();
  if (cfg.init.preset == "zero") return Field(n);
  if (cfg.init.preset == "constant") return Field(n, cfg.init.value);
  Field f(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(cfg.grid.x(i)) <= cfg.init.halfWidth + 1e-12) f[i] = cfg.init.value;
  }
  return f;
}

StateVec laplacian(const Field& f, std::size_t i, double dx) {
  const std::size_t n = f.size();
  const StateVec& left = i == 0 ? f[1] : f[i - 1];
  const StateVec& right = i + 1 == n ? f[n - 2] : f[i + 1];
  const double inv = 1.0 / (dx * dx);
  return {(left[0] - 2.0 * f[i][0] + right[0]) * inv, (left[1] - 2.0 * f[i][1] + right[1]) * inv,
          (left[2] - 2.0 * f[i][2] + right[2]) * inv};
}

double weighted_mass(const std::vector<double>& nodal, double dx) {
  if (nodal.empty()) return 0.0;
  double s = 0.0;
  for (double v : nodal) s += v;
  s -= 0.5 * (nodal.front() + nodal.back());
  return s * dx;
}

namespace {

void step_range(const Field& f, Field& out, const ModelParams& p, double dt, double dx,
                std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    const StateVec& u = f[i];
    const StateVec lap = laplacian(f, i, dx);
    const StateVec mu = p.mutation.apply(u);
    const StateVec cu = p.competition.apply(u);
    StateVec& o = out[i];
    for (std::size_t k = 0; k < 3; ++k) {
      o[k] = u[k] + dt * (lap[k] + u[k] + p.mu * mu[k] - cu[k] * u[k]);
    }
  }
}

void check_field(const Field& f, const Grid1D& g, double t) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].finite() || !f[i].nonnegative(1e-9)) {
      std::ostringstream os;
      os << "pde: invalid value (" << f[i][0] << ", " << f[i][1] << ", " << f[i][2]
         << ") at x = " << g.x(i) << ", t = " << t;
      throw NumericalFailure(os.str());
    }
  }
}

void step_into(const Field& f, Field& out, const SimConfig& cfg, const ModelParams& p) {
  const std::size_t n = f.size();
  out.values.resize(n);
  const std::size_t workers = std::min(cfg.workers, n);
  if (workers <= 1) {
    step_range(f, out, p, cfg.dt, cfg.grid.dx, 0, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi] { step_range(f, out, p, cfg.dt, cfg.grid.dx, lo, hi); });
  }
  step_range(f, out, p, cfg.dt, cfg.grid.dx, 0, std::min(n, chunk));
}

}  // namespace

Field step(const Field& f, const SimConfig& cfg) {
  cfg.validate();
  if (f.size() != cfg.grid.size()) throw InvalidArgument("step: field does not match the grid");
  Field out;
  step_into(f, out, cfg, ModelParams::with_mu(cfg.mu));
  check_field(out, cfg.grid, cfg.dt);
  return out;
}

std::string to_string(TraceKind k) {
  return k == TraceKind::LevelSet ? "LEVEL_SET" : "OSC_ENVELOPE";
}

void FrontTrace::push(double t, std::optional<double> x) {
  if (!times.empty() && !(t > times.back())) {
    throw InvalidArgument("FrontTrace: times must be strictly increasing");
  }
  times.push_back(t);
  positions.push_back(x);
}

std::optional<double> level_set_position(const Field& f, const Grid1D& g, std::size_t component,
                                         double level) {
  // Ahead of the front the wall sits near 0 in every component. Once one of
  // them reaches the level the front has left the domain, and any crossing
  // further in belongs to the wake.
  if (f.size() < 2 || f.values.back().max() >= level) return std::nullopt;
  for (std::size_t i = f.size(); i-- > 1;) {
    const double a = f[i - 1][component] - level;
    const double b = f[i][component] - level;
    if ((a > 0.0) != (b > 0.0)) return g.x(i - 1) + g.dx * a / (a - b);
  }
  return std::nullopt;
}

EnvelopeTracker::EnvelopeTracker(std::size_t nodes, double eps, std::size_t buckets)
    : nodes_(nodes),
      eps_(eps),
      buckets_(buckets),
      ring_(nodes * buckets, 0.0),
      ringAlpha_(nodes * buckets, 0.0),
      open_(nodes, 0.0),
      openAlpha_(nodes, std::numeric_limits<double>::infinity()) {
  if (buckets == 0 || nodes < 2 || !(eps > 0.0)) {
    throw InvalidArgument("EnvelopeTracker: invalid parameters");
  }
}

void EnvelopeTracker::observe(const Field& f) {
  for (std::size_t i = 0; i < nodes_; ++i) {
    const StateVec& u = f[i];
    const double dev =
        std::max({std::abs(u[0] - 1.0), std::abs(u[1] - 1.0), std::abs(u[2] - 1.0)});
    open_[i] = std::max(open_[i], dev);
    openAlpha_[i] = std::min(openAlpha_[i], u.mean());
  }
}

std::optional<double> EnvelopeTracker::close_bucket(const Grid1D& g) {
  const auto offset = static_cast<std::ptrdiff_t>(head_ * nodes_);
  std::copy(open_.begin(), open_.end(), ring_.begin() + offset);
  std::copy(openAlpha_.begin(), openAlpha_.end(), ringAlpha_.begin() + offset);
  std::fill(open_.begin(), open_.end(), 0.0);
  std::fill(openAlpha_.begin(), openAlpha_.end(), std::numeric_limits<double>::infinity());
  head_ = (head_ + 1) % buckets_;
  filled_ = std::min(filled_ + 1, buckets_);
  if (filled_ < buckets_) return std::nullopt;

  std::vector<double> d(nodes_, 0.0);
  std::vector<double> a(nodes_, std::numeric_limits<double>::infinity());
  for (std::size_t b = 0; b < buckets_; ++b) {
    const double* row = ring_.data() + b * nodes_;
    const double* rowAlpha = ringAlpha_.data() + b * nodes_;
    for (std::size_t i = 0; i < nodes_; ++i) {
      d[i] = std::max(d[i], row[i]);
      a[i] = std::min(a[i], rowAlpha[i]);
    }
  }
  for (std::size_t j = nodes_; j-- > 0;) {
    if (d[j] > eps_ && a[j] >= 1.0 - 0.5 * eps_) {
      if (j + 1 < nodes_ && d[j + 1] <= eps_) {
        return g.x(j) + g.dx * (d[j] - eps_) / (d[j] - d[j + 1]);
      }
      return g.x(j);
    }
  }
  return std::nullopt;
}

SimResult simulate(const SimConfig& cfg) {
  cfg.validate();
  const ModelParams p = ModelParams::with_mu(cfg.mu);
  const Grid1D& g = cfg.grid;
  const auto steps = static_cast<std::size_t>(std::llround(cfg.tEnd / cfg.dt));
  const auto snapStride = static_cast<std::size_t>(std::llround(cfg.snapshotEvery / cfg.dt));
  const auto traceStride = static_cast<std::size_t>(std::llround(cfg.traceEvery / cfg.dt));
  const auto buckets =
      static_cast<std::size_t>(std::ceil(cfg.envelopeWindow / cfg.traceEvery - 1e-9));

  SimResult r;
  r.config = cfg;
  r.levelTrace.kind = TraceKind::LevelSet;
  r.envelopeTrace.kind = TraceKind::OscEnvelope;
  Field f = initial_field(cfg);
  Field next;
  EnvelopeTracker tracker(f.size(), cfg.envelopeEps, buckets);

  std::vector<std::size_t> probeNodes;
  for (double x : cfg.probes) {
    probeNodes.push_back(g.nearest(x));
    r.probes.x.push_back(g.x(probeNodes.back()));
  }
  r.probes.values.resize(probeNodes.size());
  auto record_probes = [&](double t) {
    if (probeNodes.empty()) return;
    r.probes.times.push_back(t);
    for (std::size_t k = 0; k < probeNodes.size(); ++k) r.probes.values[k].push_back(f[probeNodes[k]]);
  };

  r.snapshots.push_back({0.0, f});
  r.levelTrace.push(0.0, level_set_position(f, g, cfg.levelComponent, cfg.levelValue));
  r.envelopeTrace.push(0.0, std::nullopt);
  tracker.observe(f);
  record_probes(0.0);

  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    step_into(f, next, cfg, p);
    std::swap(f, next);
    check_field(f, g, t);
    tracker.observe(f);
    record_probes(t);
    if (k % traceStride == 0) {
      r.levelTrace.push(t, level_set_position(f, g, cfg.levelComponent, cfg.levelValue));
      r.envelopeTrace.push(t, tracker.close_bucket(g));
    }
    if (k % snapStride == 0 || k == steps) r.snapshots.push_back({t, f});
  }
  return r;
}

FrontTrace track_level_set(const std::vector<Snapshot>& series, const Grid1D& g,
                           std::size_t component, double level) {
  if (component > 2) throw InvalidArgument("track_level_set: component must be 0, 1 or 2");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("track_level_set: U must lie in (0, 1)");
  FrontTrace tr;
  tr.kind = TraceKind::LevelSet;
  for (const auto& s : series) {
    if (s.field.size() != g.size()) throw InvalidArgument("track_level_set: grid mismatch");
    tr.push(s.t, level_set_position(s.field, g, component, level));
  }
  return tr;
}

FrontTrace detect_oscillation_front(const std::vector<Snapshot>& series, const Grid1D& g,
                                    double eps, std::size_t window) {
  if (!(eps > 0.0)) throw InvalidArgument("detect_oscillation_front: eps must be positive");
  FrontTrace tr;
  tr.kind = TraceKind::OscEnvelope;
  EnvelopeTracker tracker(g.size(), eps, std::max<std::size_t>(window, 1));
  for (const auto& s : series) {
    if (s.field.size() != g.size()) throw InvalidArgument("detect_oscillation_front: grid mismatch");
    tracker.observe(s.field);
    tr.push(s.t, tracker.close_bucket(g));
  }
  return tr;
}

}  // namespace okpp::pde
