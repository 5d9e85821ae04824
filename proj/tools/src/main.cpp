#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>

#include <okpp/error.hpp>
#include <okpp/serialize.hpp>

#include "commands.hpp"
#include "experiment.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

double rational_flag(const std::string& text, const std::string& flag) {
  try {
    return okpp::io::parse_rational(text);
  } catch (const okpp::InvalidArgument& e) {
    throw okpp::InvalidArgument(flag + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (item.empty()) throw okpp::InvalidArgument("--family: empty entry in '" + text + "'");
      out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item += ch;
    }
  }
  return out;
}

okpp::io::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw okpp::InvalidArgument("cannot read config file '" + path + "'");
  try {
    return okpp::io::Json::parse(in);
  } catch (const okpp::io::Json::parse_error& e) {
    throw okpp::InvalidArgument("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-phenotype KPP system: steady-state analysis, limit cycles, fronts", "okpp"};
  app.require_subcommand(1);
  app.fallthrough();

  okpp::cli::CommonOptions common;
  app.add_option("--out", common.out, "Run directory (default okpp-runs/<command>)");
  app.add_option("--seed", common.seed, "Seed for randomised steps (default 0)");

  std::string mu;
  auto* analyze = app.add_subcommand("analyze", "Spectral and steady-state report at one mu");
  analyze->add_option("--mu", mu, "Mutation rate, decimal or p/q")->required();

  std::string family;
  std::string cycleDt = "1e-3";
  auto* cycle = app.add_subcommand("cycle", "Limit cycle, Floquet exponents and the mu -> 0 family");
  auto* cycleMu = cycle->add_option("--mu", mu, "Single mu below 7/60");
  auto* cycleFamily =
      cycle->add_option("--family", family, "Comma-separated decreasing mu values");
  cycleMu->excludes(cycleFamily);
  cycle->add_option("--dt", cycleDt, "Integration step");

  std::string preset = "paper";
  std::string config;
  std::string dx, dt, halfLength, tEnd, level, eps, x0;
  std::size_t workers = 0;
  auto* simulate = app.add_subcommand("simulate", "Reaction-diffusion run with front measurements");
  simulate->add_option("--preset", preset, "paper | desk");
  simulate->add_option("--config", config, "JSON experiment file (overrides the preset)");
  auto* simMu = simulate->add_option("--mu", mu, "Mutation rate");
  auto* simDx = simulate->add_option("--dx", dx, "Grid spacing; dt follows as 0.1 dx^2 unless given");
  auto* simDt = simulate->add_option("--dt", dt, "Time step");
  auto* simL = simulate->add_option("--L", halfLength, "Half-length of the domain [-L, L]");
  auto* simT = simulate->add_option("--tEnd", tEnd, "Final time");
  auto* simLevel = simulate->add_option("--level", level, "Level of the outer front (default 0.9)");
  auto* simEps = simulate->add_option("--eps", eps, "Envelope threshold (default 0.1)");
  auto* simX0 = simulate->add_option("--x0", x0, "Wave-train sampling point (default 200)");
  auto* simWorkers = simulate->add_option("--workers", workers, "Threads per step");

  std::string speed;
  auto* front = app.add_subcommand("front", "Monotone scalar travelling-wave profile");
  front->add_option("--c", speed, "Wave speed, at least 2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    okpp::io::Json summary;
    if (analyze->parsed()) {
      summary = okpp::cli::cmd_analyze(rational_flag(mu, "--mu"), mu, common);
    } else if (cycle->parsed()) {
      okpp::cli::CycleRequest req;
      if (cycleFamily->count() > 0) {
        req.family = true;
        req.muText = split_list(family);
      } else if (cycleMu->count() > 0) {
        req.muText = {mu};
      } else {
        throw okpp::InvalidArgument("cycle: give --mu or --family");
      }
      for (const auto& m : req.muText) req.mu.push_back(rational_flag(m, "--mu"));
      req.dt = rational_flag(cycleDt, "--dt");
      summary = okpp::cli::cmd_cycle(req, common);
    } else if (simulate->parsed()) {
      okpp::cli::SimulateSpec spec = config.empty()
                                         ? okpp::cli::preset_spec(preset)
                                         : okpp::cli::simulate_spec_from_json(read_json_file(config));
      if (app.get_option("--seed")->count() > 0) spec.seed = common.seed;
      auto& sim = spec.sim;
      if (simMu->count() > 0) sim.mu = rational_flag(mu, "--mu");
      if (simDx->count() > 0) {
        sim.grid.dx = rational_flag(dx, "--dx");
        if (simDt->count() == 0) sim.dt = 0.1 * sim.grid.dx * sim.grid.dx;
      }
      if (simDt->count() > 0) sim.dt = rational_flag(dt, "--dt");
      if (simL->count() > 0) sim.grid.halfLength = rational_flag(halfLength, "--L");
      if (simT->count() > 0) sim.tEnd = rational_flag(tEnd, "--tEnd");
      if (simLevel->count() > 0) sim.levelValue = rational_flag(level, "--level");
      if (simEps->count() > 0) sim.envelopeEps = rational_flag(eps, "--eps");
      if (simX0->count() > 0) spec.analysis.x0 = rational_flag(x0, "--x0");
      if (simWorkers->count() > 0) sim.workers = workers;
      common.seed = spec.seed;
      summary = okpp::cli::cmd_simulate(spec, common);
    } else if (front->parsed()) {
      summary = okpp::cli::cmd_front(rational_flag(speed, "--c"), common);
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const okpp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const okpp::Error& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return 1;
  }
}
