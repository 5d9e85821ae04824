#include "okpp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "okpp/error.hpp"

namespace okpp::measure {

SpeedEstimate estimate_speed(const pde::FrontTrace& trace, Window w) {
  if (!(w.t1 > w.t0)) throw InvalidArgument("estimate_speed: empty window");
  std::vector<double> t, x;
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    if (trace.times[k] >= w.t0 && trace.times[k] <= w.t1 && trace.positions[k]) {
      t.push_back(trace.times[k]);
      x.push_back(*trace.positions[k]);
    }
  }
  if (t.size() < 10) {
    std::ostringstream os;
    os << "estimate_speed: " << t.size() << " samples in [" << w.t0 << ", " << w.t1
       << "], need at least 10";
    throw InvalidArgument(os.str());
  }
  const auto n = static_cast<double>(t.size());
  double tm = 0.0, xm = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    tm += t[k];
    xm += x[k];
  }
  tm /= n;
  xm /= n;
  double stt = 0.0, stx = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    stt += (t[k] - tm) * (t[k] - tm);
    stx += (t[k] - tm) * (x[k] - xm);
    sxx += (x[k] - xm) * (x[k] - xm);
  }
  SpeedEstimate e;
  e.samples = t.size();
  e.speed = stx / stt;
  e.intercept = xm - e.speed * tm;
  e.r2 = sxx > 0.0 ? (stx * stx) / (stt * sxx) : 1.0;
  return e;
}

std::vector<Peak> find_peaks(const std::vector<double>& y, double minProminence) {
  std::vector<Peak> out;
  const std::size_t n = y.size();
  if (n < 3) return out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    double leftMin = y[i];
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] > y[i]) break;
      leftMin = std::min(leftMin, y[j]);
    }
    double rightMin = y[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[j] > y[i]) break;
      rightMin = std::min(rightMin, y[j]);
    }
    const double prominence = y[i] - std::max(leftMin, rightMin);
    if (prominence < minProminence) continue;
    const double a = y[i - 1], b = y[i], c = y[i + 1];
    const double den = a - 2.0 * b + c;
    const double off = den != 0.0 ? std::clamp(0.5 * (a - c) / den, -0.5, 0.5) : 0.0;
    out.push_back({static_cast<double>(i) + off, b - 0.25 * (a - c) * off, prominence});
  }
  return out;
}

namespace {

double mean_spacing(const std::vector<Peak>& peaks) {
  return (peaks.back().position - peaks.front().position) /
         static_cast<double>(peaks.size() - 1);
}

std::size_t probe_index(const pde::ProbeSeries& probes, double x, double dx, const char* what) {
  for (std::size_t k = 0; k < probes.x.size(); ++k) {
    if (std::abs(probes.x[k] - x) < 0.5 * dx) return k;
  }
  std::ostringstream os;
  os << "measure_wave_train: no probe recorded at " << what << " = " << x;
  throw InvalidArgument(os.str());
}

}  // namespace

WaveTrainMeasurement measure_wave_train(const pde::SimResult& sim, double x0, Window w,
                                        const cycles::LimitCycleRecord& cycle,
                                        const WaveTrainOptions& opts) {
  const pde::Grid1D& g = sim.config.grid;
  if (!(w.t1 > w.t0)) throw InvalidArgument("measure_wave_train: empty window");
  if (!(cycle.betaMax > 0.0)) throw InvalidArgument("measure_wave_train: cycle has no amplitude");
  const double xa = g.x(g.nearest(x0));
  const std::size_t pa = probe_index(sim.probes, xa, g.dx, "x0");
  const std::size_t pb = probe_index(sim.probes, xa + g.dx, g.dx, "x0 + dx");

  std::vector<double> a, b;
  double betaMax = 0.0;
  double dtp = 0.0;
  const auto& times = sim.probes.times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < w.t0 || times[k] > w.t1) continue;
    if (!a.empty() && dtp == 0.0) dtp = times[k] - times[k - 1];
    const StateVec& u = sim.probes.values[pa][k];
    a.push_back(u[0]);
    b.push_back(sim.probes.values[pb][k][0]);
    betaMax = std::max(betaMax, std::abs(decompose(u).beta));
  }
  const auto peaks = find_peaks(a, opts.minProminence);
  if (peaks.size() < 3) {
    std::ostringstream os;
    os << "measure_wave_train: " << peaks.size() << " peaks of u1 at x = " << xa
       << " in the window, need 3";
    throw InvalidArgument(os.str());
  }

  WaveTrainMeasurement m;
  m.x0 = xa;
  m.period = mean_spacing(peaks) * dtp;
  m.sigma = 2.0 * constants::kPi / m.period;
  m.betaMax = betaMax;
  m.gamma = betaMax / cycle.betaMax;

  // Cross-correlation lag within half a period.
  auto demean = [](std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    s /= static_cast<double>(v.size());
    for (double& x : v) x -= s;
  };
  demean(a);
  demean(b);
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const auto maxLag =
      std::min<std::ptrdiff_t>(n / 2, static_cast<std::ptrdiff_t>(0.5 * m.period / dtp));
  auto corr = [&](std::ptrdiff_t lag) {
    double s = 0.0;
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, -lag); i < std::min(n, n - lag); ++i) {
      s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i + lag)];
    }
    return s / static_cast<double>(n - std::abs(lag));
  };
  std::ptrdiff_t best = 0;
  double bestVal = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t lag = -maxLag; lag <= maxLag; ++lag) {
    const double c = corr(lag);
    if (c > bestVal) {
      bestVal = c;
      best = lag;
    }
  }
  double lag = static_cast<double>(best);
  if (best > -maxLag && best < maxLag) {
    const double cm = corr(best - 1), cp = corr(best + 1);
    const double den = cm - 2.0 * bestVal + cp;
    if (den < 0.0) lag += 0.5 * (cm - cp) / den;
  }
  m.lag = lag * dtp;

  // Local wavenumber from the latest stored snapshot inside the window.
  const auto& snaps = sim.snapshots;
  const auto snap = std::find_if(snaps.rbegin(), snaps.rend(),
                                 [&](const auto& s) { return s.t >= w.t0 && s.t <= w.t1; });
  if (snap == snaps.rend()) throw InvalidArgument("measure_wave_train: no snapshot in the window");
  m.snapshotTime = snap->t;
  const std::size_t lo = g.nearest(xa - opts.halfSpan);
  const std::size_t hi = g.nearest(xa + opts.halfSpan);
  if (hi <= lo + 1) throw InvalidArgument("measure_wave_train: spatial window too small");
  std::vector<StateVec> states(snap->field.values.begin() + static_cast<std::ptrdiff_t>(lo),
                               snap->field.values.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  std::vector<double> profile;
  for (const StateVec& u : states) profile.push_back(u[0]);
  const auto spatial = find_peaks(profile, opts.minProminence);
  if (spatial.size() >= 2) m.peakWavelength = mean_spacing(spatial) * g.dx;

  const auto phase = cycles::unwrapped_phase(states);
  double xm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    xm += g.x(lo + i);
    pm += phase[i];
  }
  xm /= static_cast<double>(phase.size());
  pm /= static_cast<double>(phase.size());
  double sxx = 0.0, sxp = 0.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    sxx += (g.x(lo + i) - xm) * (g.x(lo + i) - xm);
    sxp += (g.x(lo + i) - xm) * (phase[i] - pm);
  }
  const double slope = sxp / sxx;
  m.phaseSlope = slope;
  const double span = g.x(hi) - g.x(lo);
  if (std::abs(slope) * span < opts.homogeneousPhase || m.lag == 0.0) {
    m.wavelength = std::numeric_limits<double>::infinity();
    m.kappa = 0.0;
    return m;
  }
  m.wavelength = 2.0 * constants::kPi / std::abs(slope);
  m.kappa = (m.lag > 0.0 ? 1.0 : -1.0) * 2.0 * constants::kPi / m.wavelength;
  m.speed = m.sigma / m.kappa;
  return m;
}

}  // namespace okpp::measure
