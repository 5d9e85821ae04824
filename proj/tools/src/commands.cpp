#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <okpp/bifurcation.hpp>
#include <okpp/error.hpp>
#include <okpp/floquet.hpp>
#include <okpp/front_profile.hpp>
#include <okpp/limit_cycle.hpp>
#include <okpp/measure.hpp>
#include <okpp/model.hpp>
#include <okpp/pde.hpp>

namespace okpp::cli {

using io::Json;

namespace {

Json state_json(const StateVec& v) { return Json::array({v[0], v[1], v[2]}); }

template <std::size_t N>
Json array_json(const std::array<double, N>& a) {
  return Json(std::vector<double>(a.begin(), a.end()));
}

Json or_null(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

RunDirectory open_run(const CommonOptions& common, const std::string& command) {
  return RunDirectory(common.out.empty() ? "okpp-runs/" + command : common.out);
}

Json floquet_json(const cycles::LimitCycleRecord& c) {
  const ModelParams p = ModelParams::with_mu(c.mu);
  const auto base = floquet::floquet(c, p, 0.0);
  Json j;
  Json mult = Json::array();
  for (const Complex& m : base.multipliers) mult.push_back(io::to_json(m));
  j["multipliers"] = mult;
  j["exponents"] = array_json(base.exponents);
  j["trivialIndex"] = base.trivialIndex;
  Json shifts = Json::array();
  for (double omega : {0.5, 1.0, 2.0}) {
    const auto r = floquet::floquet(c, p, omega);
    shifts.push_back({{"omega", omega},
                      {"shifted", array_json(r.omegaShifted)},
                      {"direct", r.omegaDirect ? array_json(*r.omegaDirect) : Json(nullptr)}});
  }
  j["shift"] = shifts;
  return j;
}

Json cycle_json(const cycles::LimitCycleRecord& c, double hausdorff, const std::string& file,
                bool withFloquet) {
  Json j;
  j["mu"] = c.mu;
  j["file"] = file;
  j["period"] = c.period;
  j["betaMax"] = c.betaMax;
  j["alphaRange"] = Json::array({c.alphaRange.first, c.alphaRange.second});
  j["rotation"] = cycles::to_string(c.rotation);
  j["crossings"] = c.crossings;
  j["stepSize"] = c.stepSize;
  j["hausdorffToC0"] = hausdorff;
  j["vertexDistances"] = array_json(cycles::vertex_distances(c));
  if (withFloquet) {
    j["floquet"] = floquet_json(c);
  } else {
    // Near the heteroclinic limit the contracting multipliers underflow; a
    // failure there is reported rather than fatal.
    try {
      j["floquet"] = floquet_json(c);
    } catch (const Error& e) {
      j["floquet"] = nullptr;
      j["floquetError"] = e.what();
    }
  }
  return j;
}

Json speed_entry(const pde::FrontTrace& trace, measure::Window w, double tEnd) {
  Json j;
  j["window"] = Json::array({w.t0, w.t1});
  j["speed"] = nullptr;
  j["intercept"] = nullptr;
  j["r2"] = nullptr;
  j["samples"] = 0;
  j["reason"] = nullptr;
  if (w.t1 > tEnd) {
    j["reason"] = "insufficient window: ends after tEnd";
    return j;
  }
  try {
    const auto e = measure::estimate_speed(trace, w);
    j["speed"] = e.speed;
    j["intercept"] = e.intercept;
    j["r2"] = e.r2;
    j["samples"] = e.samples;
  } catch (const InvalidArgument& e) {
    j["reason"] = std::string("insufficient window: ") + e.what();
  }
  return j;
}

Json empty_wave_train(const SimulateSpec& spec, const std::string& reason) {
  Json j;
  for (const char* key : {"gamma", "wavelength", "period", "kappa", "sigma", "speed"}) {
    j[key] = nullptr;
  }
  j["x0"] = spec.analysis.x0;
  j["window"] = Json::array({spec.analysis.wave.t0, spec.analysis.wave.t1});
  j["reason"] = reason;
  return j;
}

void write_probes_csv(std::ostream& os, const pde::ProbeSeries& probes, std::size_t stride) {
  os << "t,x,u1,u2,u3\n" << std::setprecision(12);
  for (std::size_t p = 0; p < probes.x.size(); ++p) {
    for (std::size_t k = 0; k < probes.times.size(); k += stride) {
      const StateVec& u = probes.values[p][k];
      os << probes.times[k] << ',' << probes.x[p] << ',' << u[0] << ',' << u[1] << ',' << u[2]
         << '\n';
    }
  }
}

}  // namespace

Json cmd_analyze(double mu, const std::string& muText, const CommonOptions& common) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw InvalidArgument("analyze: mu must be positive, got " + muText);
  }
  RunDirectory run = open_run(common, "analyze");
  run.write_json("config.json",
                 {{"command", "analyze"}, {"mu", mu}, {"muText", muText}, {"seed", common.seed}});

  const auto hopf = bifurcation::hopf_analysis(mu);
  const auto lo = bifurcation::lambda_omega_params(mu);
  if (lo.basisCheck > 1e-12) {
    std::ostringstream os;
    os << "analyze: lambda-omega block form off by " << lo.basisCheck;
    throw InconsistencyError(os.str());
  }
  const auto speeds = bifurcation::spreading_speeds(mu);
  bifurcation::NewtonSweepOptions sweepOpts;
  sweepOpts.rngSeed = common.seed;
  const auto cert = bifurcation::positive_steady_states(mu, sweepOpts);
  const auto sign = sign_structure(StateVec::constant(1.0), ModelParams::with_mu(mu));

  Json r;
  r["mu"] = mu;
  r["muText"] = muText;
  r["stable"] = hopf.stable;
  r["hopf"] = {{"lambda", io::to_json(hopf.lambda)},
               {"zModeEigenvalue", io::to_json(hopf.zModeEigenvalue)},
               {"transverseEigenvalue", hopf.transverseEigenvalue},
               {"muH", hopf.muH},
               {"muMinus", hopf.muMinus},
               {"muPlus", hopf.muPlus}};
  r["lambdaOmega"] = {
      {"lambda0", lo.lambda0}, {"omega0", lo.omega0}, {"basisCheck", lo.basisCheck}};
  r["speeds"] = {{"cZeroInvasion", speeds.zeroInvasion}, {"cLin", or_null(speeds.linear)}};
  if (speeds.linear) {
    const double threshold = bifurcation::sherratt_threshold(mu);
    const double product = *speeds.linear * threshold;
    if (std::abs(product - 0.7 * std::sqrt(3.0)) > 1e-12) {
      std::ostringstream os;
      os << std::setprecision(17) << "analyze: cLin * threshold = " << product
         << " differs from 7 sqrt(3) / 10";
      throw InconsistencyError(os.str());
    }
    r["sherrattThreshold"] = threshold;
  } else {
    r["sherrattThreshold"] = nullptr;
  }
  r["l1"] = bifurcation::first_lyapunov_coefficient();

  Json roots = Json::array();
  for (const StateVec& v : cert.roots) roots.push_back(state_json(v));
  r["steadyStates"] = {{"roots", roots},
                       {"polyCoeffs", array_json(cert.polyCoeffs)},
                       {"discriminant", cert.discriminant},
                       {"discriminantSign", cert.discriminantSign},
                       {"sweep",
                        {{"seeds", sweepOpts.seeds},
                         {"rngSeed", sweepOpts.rngSeed},
                         {"converged", cert.sweep.converged},
                         {"diverged", cert.sweep.diverged},
                         {"stalled", cert.sweep.stalled}}}};
  r["signStructureAtOne"] = {{"kind", to_string(sign.kind)},
                             {"offDiagonalSigns", sign.offDiagonalSigns},
                             {"cooperativeBound", sign.cooperativeBound},
                             {"competitiveBound", sign.competitiveBound}};
  run.write_json("analysis.json", r);
  return r;
}

Json cmd_cycle(const CycleRequest& req, const CommonOptions& common) {
  if (req.mu.empty()) throw InvalidArgument("cycle: no mu given");
  for (std::size_t k = 0; k < req.mu.size(); ++k) {
    if (!(req.mu[k] > 0.0)) throw InvalidArgument("cycle: mu must be positive, got " + req.muText[k]);
    if (req.mu[k] >= constants::kMuHopf) {
      throw InvalidArgument("cycle: mu = " + req.muText[k] +
                            " >= mu_H = 7/60; the steady state 1 is stable, no cycle sought");
    }
  }
  RunDirectory run = open_run(common, "cycle");
  run.write_json("config.json", {{"command", "cycle"},
                                 {"mu", req.mu},
                                 {"muText", req.muText},
                                 {"family", req.family},
                                 {"dt", req.dt},
                                 {"seed", common.seed}});

  cycles::FamilyOptions opts;
  opts.cycle.dt = req.dt;
  const auto fam = cycles::cycle_family(req.mu, opts);
  const double linearPeriod = 2.0 * constants::kPi / (0.35 * std::sqrt(3.0));

  Json summary;
  Json members = Json::array();
  for (std::size_t k = 0; k < fam.cycles.size(); ++k) {
    const auto& c = fam.cycles[k];
    const std::string file = req.family ? "cycle_" + std::to_string(k) + ".csv" : "cycle.csv";
    run.write_text(file, [&](std::ostream& os) { io::write_cycle_csv(os, c.times, c.samples); });
    members.push_back(cycle_json(c, fam.hausdorffToC0[k], file, !req.family));
  }
  summary["linearPeriod"] = linearPeriod;
  if (req.family) {
    bool decreasing = true;
    for (std::size_t k = 1; k < fam.hausdorffToC0.size(); ++k) {
      decreasing = decreasing && fam.hausdorffToC0[k] < fam.hausdorffToC0[k - 1];
    }
    summary["family"] = members;
    summary["hausdorffDecreasing"] = decreasing;
    summary["error"] = fam.error ? Json(*fam.error) : Json(nullptr);
    summary["failedMu"] = or_null(fam.failedMu);
  } else {
    summary["cycle"] = members.empty() ? Json(nullptr) : members.front();
  }
  run.write_json("cycle.json", summary);
  if (fam.error) throw NumericalFailure(*fam.error);
  return summary;
}

Json cmd_simulate(const SimulateSpec& specIn, const CommonOptions& common) {
  SimulateSpec spec = specIn;
  pde::SimConfig& cfg = spec.sim;
  cfg.validate();
  const pde::Grid1D& g = cfg.grid;

  std::optional<std::string> waveReason;
  if (spec.analysis.wave.t1 > cfg.tEnd) {
    waveReason = "insufficient window: ends after tEnd";
  } else if (cfg.mu >= constants::kMuHopf) {
    waveReason = "mu >= 7/60: no limit cycle, no wave train";
  } else if (!(std::abs(spec.analysis.x0) + g.dx <= g.halfLength)) {
    waveReason = "x0 outside the grid";
  }
  if (!waveReason) {
    const double xa = g.x(g.nearest(spec.analysis.x0));
    for (double x : {xa, xa + g.dx}) {
      const bool present = std::any_of(cfg.probes.begin(), cfg.probes.end(),
                                       [&](double y) { return std::abs(y - x) < 0.5 * g.dx; });
      if (!present) cfg.probes.push_back(x);
    }
  }

  RunDirectory run = open_run(common, "simulate");
  run.write_json("config.json", to_json(spec));

  const pde::SimResult sim = pde::simulate(cfg);
  run.write_text("snapshots.csv",
                 [&](std::ostream& os) { io::write_snapshots_csv(os, sim.snapshots, g); });
  run.write_text("fronts.csv", [&](std::ostream& os) {
    io::write_trace_csv(os, {&sim.levelTrace, &sim.envelopeTrace});
  });
  if (!sim.probes.x.empty()) {
    const auto stride = static_cast<std::size_t>(std::llround(cfg.traceEvery / cfg.dt));
    run.write_text("probes.csv",
                   [&](std::ostream& os) { write_probes_csv(os, sim.probes, stride); });
  }

  Json speeds;
  speeds["outer"] = speed_entry(sim.levelTrace, spec.analysis.outer, cfg.tEnd);
  speeds["envelope"] = speed_entry(sim.envelopeTrace, spec.analysis.envelope, cfg.tEnd);
  const auto predicted = bifurcation::spreading_speeds(cfg.mu);
  speeds["predicted"] = {{"outer", predicted.zeroInvasion}, {"envelope", or_null(predicted.linear)}};
  run.write_json("speeds.json", speeds);

  Json wave;
  if (waveReason) {
    wave = empty_wave_train(spec, *waveReason);
  } else {
    // gamma is taken against the homogeneous oscillation of the same explicit
    // scheme; the RK4 cycle ratio is reported alongside.
    cycles::LimitCycleOptions eulerOpts;
    eulerOpts.dt = cfg.dt;
    eulerOpts.scheme = cycles::Scheme::ForwardEuler;
    eulerOpts.relTol = 1e-4;
    const auto eulerCycle = cycles::find_limit_cycle(cfg.mu, eulerOpts);
    const auto odeCycle = cycles::find_limit_cycle(cfg.mu);
    try {
      const auto m =
          measure::measure_wave_train(sim, spec.analysis.x0, spec.analysis.wave, eulerCycle);
      wave = io::to_json(m);
      wave["gammaOde"] = m.betaMax / odeCycle.betaMax;
      wave["referenceBetaMax"] = eulerCycle.betaMax;
      wave["window"] = Json::array({spec.analysis.wave.t0, spec.analysis.wave.t1});
      wave["reason"] = nullptr;
    } catch (const InvalidArgument& e) {
      wave = empty_wave_train(spec, e.what());
    }
  }
  run.write_json("wavetrain.json", wave);

  return {{"outerSpeed", speeds["outer"]["speed"]},
          {"envelopeSpeed", speeds["envelope"]["speed"]},
          {"gamma", wave["gamma"]},
          {"wavelength", wave["wavelength"]},
          {"waveSpeed", wave["speed"]}};
}

Json cmd_front(double c, const CommonOptions& common) {
  if (!std::isfinite(c) || c < 2.0) {
    std::ostringstream os;
    os << "front: refusing c = " << c
       << ": monotone fronts from 1 to 0 exist only for c >= 2; below that the linearisation "
          "at 0 has complex roots and any profile oscillates through negative values";
    throw InvalidArgument(os.str());
  }
  RunDirectory run = open_run(common, "front");
  run.write_json("config.json", {{"command", "front"}, {"c", c}, {"seed", common.seed}});

  const auto prof = front::scalar_front_profile(c);
  for (std::size_t k = 1; k < prof.p.size(); ++k) {
    if (!(prof.p[k] < prof.p[k - 1])) {
      throw InconsistencyError("front: profile is not strictly decreasing");
    }
  }
  run.write_text("profile.csv", [&](std::ostream& os) { io::write_profile_csv(os, prof); });
  Json r = {{"c", c},
            {"tailRate", front::tail_rate(c)},
            {"tailSlope", prof.tailSlope},
            {"maxResidual", prof.maxResidual},
            {"monotone", true},
            {"points", prof.p.size()},
            {"xiRange", Json::array({prof.xi.front(), prof.xi.back()})}};
  run.write_json("front.json", r);
  return r;
}

}  // namespace okpp::cli
