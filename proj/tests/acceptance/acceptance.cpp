// Prints one PASS/FAIL line per acceptance criterion and exits nonzero when
// any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include <okpp/bifurcation.hpp>
#include <okpp/error.hpp>
#include <okpp/floquet.hpp>
#include <okpp/front_profile.hpp>
#include <okpp/limit_cycle.hpp>
#include <okpp/measure.hpp>
#include <okpp/model.hpp>
#include <okpp/pde.hpp>

using namespace okpp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  void add(bool ok, const std::string& what) {
    pass_ = pass_ && ok;
    if (!ok) failures_.push_back(what);
  }
  Outcome done(std::string summary) const {
    if (!failures_.empty()) {
      summary += "; failed:";
      for (const auto& f : failures_) summary += " [" + f + "]";
    }
    return {pass_, summary};
  }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
};

template <class... T>
std::string fmt(const T&... parts) {
  std::ostringstream os;
  os.precision(10);
  (os << ... << parts);
  return os.str();
}

const double kMu = constants::kMuReference;
const double kSqrt3 = std::sqrt(3.0);

Outcome lyapunov() {
  const double l1 = bifurcation::first_lyapunov_coefficient();
  const double expected = -13.0 * kSqrt3 / 90.0;
  Report r;
  r.add(std::abs(l1 - expected) < 1e-10, "l1 within 1e-10 of -13 sqrt(3)/90");
  return r.done(fmt("l1 = ", l1, ", closed form ", expected));
}

Outcome hopf_spectrum() {
  Report r;
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double mu = k / 100.0;
    const Complex closed{3.0 * (7.0 / 60.0 - mu), 7.0 * kSqrt3 / 20.0};
    const auto ev = Eigen::EigenSolver<Mat3>(bifurcation::linearization_at_one(mu).expand())
                        .eigenvalues();
    for (const Complex target : {closed, std::conj(closed), Complex{-1.0, 0.0}}) {
      double best = 1e300;
      for (int i = 0; i < 3; ++i) best = std::min(best, std::abs(ev(i) - target));
      worst = std::max(worst, best);
    }
    worst = std::max(worst, std::abs(bifurcation::hopf_analysis(mu).lambda - closed));
  }
  r.add(worst < 1e-12, "dense eigenvalues within 1e-12");
  return r.done(fmt("100 values of mu in (0, 1], worst deviation ", worst));
}

Outcome steady_states() {
  Report r;
  std::size_t roots = 0;
  for (const double mu : {0.05, kMu, 0.2, 0.5, 0.9}) {
    try {
      const auto cert = bifurcation::positive_steady_states(mu);
      for (const auto& v : cert.sweep.nonnegativeRoots) {
        const bool known = v.max_abs() < 1e-8 || (v - StateVec::constant(1.0)).max_abs() < 1e-8;
        r.add(known, fmt("unexpected root at mu = ", mu));
      }
      r.add(cert.sweep.nonnegativeRoots.size() == 2, fmt("both roots found at mu = ", mu));
      roots += cert.sweep.nonnegativeRoots.size();
    } catch (const InconsistencyError& e) {
      r.add(false, e.what());
    }
  }
  return r.done(fmt("1000 seeds at 5 values of mu, ", roots, " nonnegative roots in total"));
}

Outcome cycle_at_reference() {
  Report r;
  const auto c = cycles::find_limit_cycle(kMu);
  double minU = 1e300, minMargin = 1e300;
  for (const auto& v : c.samples) {
    minU = std::min(minU, v.min());
    minMargin = std::min(minMargin, cycles::localization_margin(v, kMu));
  }
  const double linear = 40.0 * constants::kPi / (7.0 * kSqrt3);
  r.add(minU > 0.0, "strictly positive");
  r.add(c.alphaRange.first >= 1.0 - 1e-6 && c.alphaRange.second <= 10.0 / 3.0 + 1e-6,
        "alpha in [1, 10/3]");
  r.add(c.rotation == cycles::Rotation::Clockwise, "clockwise");
  r.add(std::abs(c.period - linear) < 0.15 * linear, "period within 15%");
  r.add(minMargin >= 0.0, "localization band");
  return r.done(fmt("period ", c.period, " (linear ", linear, "), alpha [", c.alphaRange.first,
                    ", ", c.alphaRange.second, "], min u ", minU, ", min band margin ", minMargin,
                    ", rotation ", cycles::to_string(c.rotation)));
}

Outcome amplitude_scaling() {
  Report r;
  const double far = cycles::find_limit_cycle(constants::kMuHopf - 4e-3).betaMax;
  const double near = cycles::find_limit_cycle(constants::kMuHopf - 1e-3).betaMax;
  const double ratio = far / near;
  r.add(std::abs(ratio - 2.0) < 0.2, "ratio 2 within 10%");
  return r.done(fmt("betaMax ", far, " / ", near, " = ", ratio));
}

Outcome heteroclinic_limit() {
  Report r;
  const auto fam = cycles::cycle_family({0.1, 1e-3});
  r.add(!fam.error, fam.error.value_or(""));
  if (fam.cycles.size() == 2) {
    const auto d = cycles::vertex_distances(fam.cycles[1]);
    for (std::size_t i = 0; i < 3; ++i) r.add(d[i] < 0.3, fmt("within 0.3 of 10 e", i + 1));
    r.add(fam.hausdorffToC0[1] < fam.hausdorffToC0[0], "Hausdorff distance decreases");
    return r.done(fmt("vertex distances at mu = 1e-3: ", d[0], ", ", d[1], ", ", d[2],
                      "; Hausdorff ", fam.hausdorffToC0[0], " -> ", fam.hausdorffToC0[1]));
  }
  return r.done("family incomplete");
}

Outcome floquet_check() {
  Report r;
  const auto c = cycles::find_limit_cycle(kMu);
  const ModelParams p = ModelParams::with_mu(kMu);
  const auto base = floquet::floquet(c, p, 0.0);
  const Complex trivial = base.multipliers[base.trivialIndex];
  r.add(std::abs(trivial - 1.0) < 1e-3, "trivial multiplier within 1e-3");
  int negative = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i != base.trivialIndex && base.exponents[i] < 0.0) ++negative;
  }
  r.add(negative == 2, "two negative exponents");
  double worst = 0.0;
  for (const double omega : {0.5, 1.0, 2.0}) {
    const auto shifted = floquet::floquet(c, p, omega);
    for (std::size_t i = 0; i < 3; ++i) {
      worst = std::max(worst, std::abs((*shifted.omegaDirect)[i] - (base.exponents[i] - omega * omega)));
    }
  }
  r.add(worst < 1e-8, "shift identity within 1e-8");
  return r.done(fmt("trivial multiplier ", trivial.real(), ", exponents ", base.exponents[0], ", ",
                    base.exponents[1], ", ", base.exponents[2], "; shift identity off by ", worst));
}

Outcome outer_front() {
  Report r;
  pde::SimConfig cfg;
  cfg.grid.halfLength = 400.0;
  cfg.tEnd = 300.0;
  cfg.snapshotEvery = 300.0;
  const auto sim = pde::simulate(cfg);
  const auto e = measure::estimate_speed(sim.levelTrace, {100.0, 300.0});
  r.add(std::abs(e.speed - 2.0) < 0.1, "speed 2 within 5%");
  return r.done(fmt("L = 400, tEnd = 300: 0.9-level speed ", e.speed, " from ", e.samples,
                    " samples"));
}

Outcome terrace() {
  Report r;
  pde::SimConfig cfg;
  const double x0 = 200.0;
  cfg.probes = {x0, x0 + cfg.grid.dx};
  const auto sim = pde::simulate(cfg);
  const auto env = measure::estimate_speed(sim.envelopeTrace, {400.0, 1100.0});
  const double cLin = 1.0 / std::sqrt(10.0);
  r.add(std::abs(env.speed - cLin) < 0.15 * cLin, "envelope speed within 15% of 1/sqrt(10)");

  cycles::LimitCycleOptions eulerOpts;
  eulerOpts.dt = cfg.dt;
  eulerOpts.scheme = cycles::Scheme::ForwardEuler;
  eulerOpts.relTol = 1e-4;
  const auto cycle = cycles::find_limit_cycle(cfg.mu, eulerOpts);
  const auto m = measure::measure_wave_train(sim, x0, {800.0, 1100.0}, cycle);
  r.add(m.gamma > 0.8 && m.gamma < 1.0, "gamma in (0.8, 1)");
  r.add(m.speed.has_value() && *m.speed < -2.0, "wave speed negative with modulus above 2");
  return r.done(fmt("envelope speed ", env.speed, ", gamma ", m.gamma, ", wavelength ",
                    m.wavelength, ", wave speed ", m.speed ? fmt(*m.speed) : "none"));
}

Outcome sign_structure_grid() {
  Report r;
  const ModelParams p = ModelParams::with_mu(kMu);
  const double coop = 13.0 / 96.0, comp = 13.0 / 12.0;
  // Ten levels per axis straddling both boundaries.
  const std::vector<double> levels{0.0,  0.05, coop - 1e-9, coop + 1e-9, 0.5,
                                   1.0,  comp - 1e-9, comp + 1e-9, 1.5,  3.0};
  int cooperative = 0, competitive = 0, mismatches = 0;
  for (double a : levels) {
    for (double b : levels) {
      for (double c : levels) {
        const StateVec v{a, b, c};
        const Mat3 j = jacobian(v, p);
        bool allPos = true, allNeg = true;
        for (int i = 0; i < 3; ++i) {
          for (int k = 0; k < 3; ++k) {
            if (i == k) continue;
            allPos = allPos && j(i, k) > 0.0;
            allNeg = allNeg && j(i, k) < 0.0;
          }
        }
        const bool inCube = v.max() < coop;
        const bool inOrthant = v.min() > comp;
        const auto s = sign_structure(v, p);
        if (allPos != inCube || allNeg != inOrthant ||
            (s.kind == Interaction::Cooperative) != allPos ||
            (s.kind == Interaction::Competitive) != allNeg) {
          ++mismatches;
        }
        cooperative += allPos;
        competitive += allNeg;
      }
    }
  }
  const auto s = sign_structure(StateVec::constant(1.0), p);
  r.add(mismatches == 0, "jacobian signs match the region test");
  r.add(std::abs(s.cooperativeBound - coop) < 1e-15 && std::abs(s.competitiveBound - comp) < 1e-15,
        "bounds 13/96 and 13/12");
  r.add(cooperative == 27 && competitive == 27, "region sizes on the grid");
  return r.done(fmt("1000 grid points: ", cooperative, " cooperative, ", competitive,
                    " competitive, ", mismatches, " mismatches"));
}

Outcome scalar_front() {
  Report r;
  const auto f = front::scalar_front_profile(2.0);
  bool monotone = true;
  for (std::size_t k = 1; k < f.p.size(); ++k) monotone = monotone && f.p[k] < f.p[k - 1];
  r.add(f.maxResidual < 1e-6, "residual below 1e-6");
  r.add(monotone, "monotone");
  bool refused = false;
  try {
    front::scalar_front_profile(1.5);
  } catch (const InvalidArgument&) {
    refused = true;
  }
  r.add(refused, "c = 1.5 refused");
  return r.done(fmt("c = 2 residual ", f.maxResidual, ", ", f.p.size(), " points"));
}

Outcome speed_identity() {
  Report r;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double mu = 0.005 + k * 0.0055;
    const double cLin = *bifurcation::spreading_speeds(mu).linear;
    worst = std::max(worst, std::abs(cLin * bifurcation::sherratt_threshold(mu) - 0.7 * kSqrt3));
  }
  r.add(worst < 1e-12, "identity within 1e-12");
  return r.done(fmt("20 values of mu, worst deviation ", worst));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"first Lyapunov coefficient", lyapunov},
      {"Hopf spectrum", hopf_spectrum},
      {"steady-state uniqueness", steady_states},
      {"limit cycle at 13/120", cycle_at_reference},
      {"Hopf amplitude scaling", amplitude_scaling},
      {"mu -> 0 limit", heteroclinic_limit},
      {"Floquet", floquet_check},
      {"PDE outer front", outer_front},
      {"PDE terrace", terrace},
      {"sign structure", sign_structure_grid},
      {"scalar front", scalar_front},
      {"speed identity", speed_identity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2zu %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
