#pragma once

// Resolved inputs of the simulate command: preset, JSON config and flag
// overrides, in that order of precedence (later wins).

#include <cstdint>
#include <string>

#include <okpp/measure.hpp>
#include <okpp/pde.hpp>
#include <okpp/serialize.hpp>

namespace okpp::cli {

struct AnalysisSpec {
  measure::Window outer{100.0, 300.0};
  measure::Window envelope{400.0, 1100.0};
  measure::Window wave{800.0, 1100.0};
  /// Where the wave train is sampled; must sit inside the oscillating region
  /// over the whole wave window.
  double x0 = 200.0;
};

struct SimulateSpec {
  std::string preset = "paper";
  std::uint64_t seed = 0;
  pde::SimConfig sim;
  AnalysisSpec analysis;
};

/// "paper" (L 2000, tEnd 1200) or "desk" (L 400, tEnd 300). Throws
/// InvalidArgument for anything else.
SimulateSpec preset_spec(const std::string& name);

/// Top-level keys: command, preset, seed, sim, analysis. Unknown keys are
/// rejected; "sim" follows the SimConfig schema on top of the preset.
SimulateSpec simulate_spec_from_json(const io::Json& j);

io::Json to_json(const SimulateSpec& spec);

}  // namespace okpp::cli
