#include "okpp/limit_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "okpp/bifurcation.hpp"
#include "okpp/dynamics.hpp"
#include "okpp/error.hpp"

namespace okpp::cycles {

std::string to_string(Rotation r) {
  switch (r) {
    case Rotation::Clockwise: return "CW";
    case Rotation::CounterClockwise: return "CCW";
    case Rotation::Mixed: return "MIXED";
  }
  return "MIXED";
}

namespace {

double section_value(const StateVec& v) { return decompose(v).beta.imag(); }

double section_rate(const StateVec& v, const ModelParams& p) {
  return decompose(reaction(v, p)).beta.imag();
}

// Root in [0, 1] of the cubic Hermite interpolant of g over one step, given
// g0 > 0 >= g1. Derivatives are per unit time, h is the step.
double hermite_root(double g0, double d0, double g1, double d1, double h) {
  auto eval = [&](double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * g0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * g1 +
           (s3 - s2) * h * d1;
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void check_state(const StateVec& v, double t) {
  if (!v.finite() || !v.nonnegative(1e-9)) {
    std::ostringstream os;
    os << "find_limit_cycle: trajectory left the positive orthant at t = " << t;
    throw NumericalFailure(os.str());
  }
}

StateVec normal_form_start(double mu) {
  const auto hopf = bifurcation::hopf_analysis(mu);
  const double omega = std::abs(hopf.lambda.imag());
  const double l1 = -13.0 * std::sqrt(3.0) / 90.0;
  const double rho = std::sqrt(-hopf.lambda.real() / (omega * l1));
  return recompose({1.0, Complex{std::min(rho, 0.8), 0.0}});
}

}  // namespace

double localization_margin(const StateVec& v, double mu) {
  const auto c = decompose(v);
  const double offset = (60.0 / 13.0) * (constants::kMuHopf - mu) - (c.alpha - 1.0);
  return 14.0 * std::sqrt(3.0) / 39.0 * std::abs(c.beta) - std::abs(offset);
}

std::array<double, 3> vertex_distances(const LimitCycleRecord& cycle) {
  if (cycle.samples.empty()) throw InvalidArgument("vertex_distances: empty cycle");
  std::array<double, 3> out;
  out.fill(std::numeric_limits<double>::infinity());
  for (const StateVec& s : cycle.samples) {
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] = std::min(out[i], (s - StateVec::basis(i, 10.0)).norm());
    }
  }
  return out;
}

std::vector<double> unwrapped_phase(const std::vector<StateVec>& samples) {
  std::vector<double> phase;
  phase.reserve(samples.size());
  double offset = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double a = std::arg(decompose(samples[k]).beta);
    if (k > 0) {
      const double d = a - prev;
      if (d > constants::kPi) offset -= 2.0 * constants::kPi;
      if (d < -constants::kPi) offset += 2.0 * constants::kPi;
    }
    prev = a;
    phase.push_back(a + offset);
  }
  return phase;
}

LimitCycleRecord find_limit_cycle(double mu, const LimitCycleOptions& opts) {
  if (!(mu > 0.0) || !(mu < constants::kMuHopf)) {
    std::ostringstream os;
    os << "find_limit_cycle: needs 0 < mu < 7/60, got " << mu;
    throw InvalidArgument(os.str());
  }
  if (!(opts.dt > 0.0) || !(opts.relTol > 0.0) || opts.transient < 0.0 ||
      !(opts.maxTransit > opts.transient)) {
    throw InvalidArgument("find_limit_cycle: invalid options");
  }
  const ModelParams p = ModelParams::with_mu(mu);
  const double h = opts.dt;
  auto advance = [&](const StateVec& x, double step) {
    if (opts.scheme == Scheme::ForwardEuler) return x + step * reaction(x, p);
    return dynamics::rk4_step(x, p, step);
  };

  StateVec v = opts.initial ? *opts.initial : normal_form_start(mu);
  if (!v.finite() || v.min() <= 0.0) {
    throw InvalidArgument("find_limit_cycle: initial state must be positive");
  }
  double t = 0.0;
  while (t < opts.transient) {
    v = advance(v, h);
    t += h;
    check_state(v, t);
  }

  std::vector<double> crossTimes;
  std::vector<StateVec> crossPoints;
  double g = section_value(v);
  double dg = section_rate(v, p);
  bool converged = false;
  while (t < opts.maxTransit) {
    const StateVec next = advance(v, h);
    check_state(next, t + h);
    const double gn = section_value(next);
    const double dgn = section_rate(next, p);
    if (g > 0.0 && gn <= 0.0) {
      const double s = hermite_root(g, dg, gn, dgn, h);
      const StateVec hit = advance(v, s * h);
      if (decompose(hit).beta.real() > 0.0) {
        crossTimes.push_back(t + s * h);
        crossPoints.push_back(hit);
        const std::size_t n = crossTimes.size();
        if (n >= 3) {
          const double t1 = crossTimes[n - 1] - crossTimes[n - 2];
          const double t0 = crossTimes[n - 2] - crossTimes[n - 3];
          const double scale = std::max(1.0, crossPoints[n - 1].max_abs());
          const double drift = (crossPoints[n - 1] - crossPoints[n - 2]).max_abs();
          const double before = (crossPoints[n - 2] - crossPoints[n - 3]).max_abs();
          // Distance still to go if the return map keeps contracting at the
          // observed rate; slow near mu_H, where a small drift is misleading.
          const double noise = 64.0 * std::numeric_limits<double>::epsilon() * scale;
          const double q = before > 0.0 ? drift / before : 0.0;
          const double remaining = drift <= noise ? drift
                                   : q < 1.0      ? drift * q / (1.0 - q)
                                                  : std::numeric_limits<double>::infinity();
          if (std::abs(t1 - t0) <= opts.relTol * t1 && drift <= 10.0 * opts.relTol * scale &&
              remaining <= 10.0 * opts.relTol * scale) {
            converged = true;
            break;
          }
        }
      }
    }
    v = next;
    g = gn;
    dg = dgn;
    t += h;
  }
  if (!converged) {
    std::ostringstream os;
    os << "find_limit_cycle: return map did not settle by t = " << opts.maxTransit
       << " (mu = " << mu << ", " << crossTimes.size() << " crossings)";
    throw NumericalFailure(os.str());
  }

  const std::size_t n = crossTimes.size();
  LimitCycleRecord rec;
  rec.mu = mu;
  rec.scheme = opts.scheme;
  rec.crossings = static_cast<int>(n);
  rec.period = 0.5 * (crossTimes[n - 1] - crossTimes[n - 3]);
  const auto steps = static_cast<std::size_t>(std::ceil(rec.period / h));
  rec.stepSize = rec.period / static_cast<double>(steps);
  rec.times.reserve(steps + 1);
  rec.samples.reserve(steps + 1);
  StateVec w = crossPoints[n - 1];
  rec.times.push_back(0.0);
  rec.samples.push_back(w);
  for (std::size_t k = 1; k <= steps; ++k) {
    w = advance(w, rec.stepSize);
    check_state(w, static_cast<double>(k) * rec.stepSize);
    rec.times.push_back(static_cast<double>(k) * rec.stepSize);
    rec.samples.push_back(w);
  }

  rec.alphaRange = {std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
  for (const StateVec& s : rec.samples) {
    const auto c = decompose(s);
    rec.alphaRange.first = std::min(rec.alphaRange.first, c.alpha);
    rec.alphaRange.second = std::max(rec.alphaRange.second, c.alpha);
    rec.betaMax = std::max(rec.betaMax, std::abs(c.beta));
  }
  const auto phase = unwrapped_phase(rec.samples);
  bool down = true, up = true;
  for (std::size_t k = 1; k < phase.size(); ++k) {
    down = down && phase[k] < phase[k - 1];
    up = up && phase[k] > phase[k - 1];
  }
  rec.rotation = down ? Rotation::Clockwise : (up ? Rotation::CounterClockwise : Rotation::Mixed);
  return rec;
}

std::vector<StateVec> resample_by_arclength(const std::vector<StateVec>& curve, double spacing) {
  if (!(spacing > 0.0)) throw InvalidArgument("resample_by_arclength: spacing must be positive");
  if (curve.size() < 2) return curve;
  std::vector<double> s(curve.size(), 0.0);
  for (std::size_t k = 1; k < curve.size(); ++k) {
    s[k] = s[k - 1] + (curve[k] - curve[k - 1]).norm();
  }
  const double total = s.back();
  if (total == 0.0) return {curve.front()};
  const auto m = static_cast<std::size_t>(std::ceil(total / spacing));
  std::vector<StateVec> out;
  out.reserve(m + 1);
  std::size_t seg = 1;
  for (std::size_t i = 0; i <= m; ++i) {
    const double target = total * static_cast<double>(i) / static_cast<double>(m);
    while (seg + 1 < s.size() && s[seg] < target) ++seg;
    const double len = s[seg] - s[seg - 1];
    const double w = len > 0.0 ? std::clamp((target - s[seg - 1]) / len, 0.0, 1.0) : 0.0;
    out.push_back(curve[seg - 1] + w * (curve[seg] - curve[seg - 1]));
  }
  return out;
}

double hausdorff_distance(const std::vector<StateVec>& a, const std::vector<StateVec>& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("hausdorff_distance: empty point set");
  auto directed = [](const std::vector<StateVec>& x, const std::vector<StateVec>& y) {
    double worst = 0.0;
    for (const StateVec& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const StateVec& q : y) {
        const StateVec d = p - q;
        best = std::min(best, dot(d, d));
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

ReferenceCycle reference_cycle_C0() {
  ReferenceCycle ref;
  const ModelParams p = ModelParams::with_mu(0.0);
  const double r = ref.ballRadius;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t next = (i + 1) % 3;
    const StateVec from = StateVec::basis(i, 10.0);
    const StateVec to = StateVec::basis(next, 10.0);
    ref.vertexIndex[i] = ref.points.size();
    ref.points.push_back(from);

    // The vertex is non-hyperbolic; leave along its centre direction.
    StateVec x = from + (r / std::sqrt(65.0)) * (StateVec::basis(i, -8.0) + StateVec::basis(next));
    auto dir = [&](const StateVec& y) {
      const StateVec f = reaction(y, p);
      const double n = f.norm();
      if (!(n > 0.0)) throw NumericalFailure("reference_cycle_C0: stalled on an equilibrium");
      return (1.0 / n) * f;
    };
    constexpr std::size_t kMaxSteps = 2'000'000;
    std::size_t steps = 0;
    for (;;) {
      ref.points.push_back(x);
      const double dist = (x - to).norm();
      if (dist <= r) break;
      if (++steps > kMaxSteps) throw NumericalFailure("reference_cycle_C0: arc did not close");
      const double ds = std::min(1e-3, 0.25 * dist);
      const StateVec k1 = dir(x);
      const StateVec k2 = dir(x + (0.5 * ds) * k1);
      const StateVec k3 = dir(x + (0.5 * ds) * k2);
      const StateVec k4 = dir(x + ds * k3);
      x += (ds / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  ref.points.push_back(StateVec::basis(0, 10.0));
  return ref;
}

FamilyResult cycle_family(const std::vector<double>& muValues, const FamilyOptions& opts) {
  if (muValues.empty()) throw InvalidArgument("cycle_family: empty mu list");
  for (std::size_t k = 0; k < muValues.size(); ++k) {
    const double mu = muValues[k];
    if (!(mu > 0.0) || !(mu < constants::kMuHopf)) {
      throw InvalidArgument("cycle_family: every mu must lie in (0, 7/60)");
    }
    if (k > 0 && !(mu < muValues[k - 1])) {
      throw InvalidArgument("cycle_family: mu values must be strictly decreasing");
    }
  }

  FamilyResult out;
  LimitCycleOptions co = opts.cycle;
  for (double mu : muValues) {
    try {
      out.cycles.push_back(find_limit_cycle(mu, co));
    } catch (const Error& e) {
      out.error = e.what();
      out.failedMu = mu;
      break;
    }
    co.initial = out.cycles.back().samples.front();
  }

  const auto ref = resample_by_arclength(reference_cycle_C0().points, opts.hausdorffSpacing);
  for (const auto& c : out.cycles) {
    out.hausdorffToC0.push_back(
        hausdorff_distance(resample_by_arclength(c.samples, opts.hausdorffSpacing), ref));
  }
  return out;
}

}  // namespace okpp::cycles
