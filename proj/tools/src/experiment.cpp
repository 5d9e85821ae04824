#include "experiment.hpp"

#include <set>

#include <okpp/error.hpp>

namespace okpp::cli {

namespace {

measure::Window window_at(const io::Json& j, const std::string& key) {
  const io::Json& w = j.at(key);
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
    throw InvalidArgument("analysis." + key + ": expected [t0, t1]");
  }
  const measure::Window out{w[0].get<double>(), w[1].get<double>()};
  if (!(out.t1 > out.t0) || out.t0 < 0.0) {
    throw InvalidArgument("analysis." + key + ": need 0 <= t0 < t1");
  }
  return out;
}

io::Json window_json(measure::Window w) { return io::Json::array({w.t0, w.t1}); }

void reject_unknown(const io::Json& j, const std::set<std::string>& known,
                    const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw InvalidArgument(where + ": unknown key '" + item.key() + "'");
    }
  }
}

}  // namespace

SimulateSpec preset_spec(const std::string& name) {
  SimulateSpec s;
  s.preset = name;
  if (name == "paper") return s;
  if (name == "desk") {
    s.sim.grid.halfLength = 400.0;
    s.sim.tEnd = 300.0;
    s.sim.snapshotEvery = 50.0;
    return s;
  }
  throw InvalidArgument("unknown preset '" + name + "' (expected paper or desk)");
}

SimulateSpec simulate_spec_from_json(const io::Json& j) {
  reject_unknown(j, {"command", "preset", "seed", "sim", "analysis"}, "config");
  try {
    if (j.contains("command") && j.at("command") != "simulate") {
      throw InvalidArgument("config: command must be \"simulate\"");
    }
    std::string preset = "paper";
    if (j.contains("preset")) {
      if (!j.at("preset").is_string()) throw InvalidArgument("config.preset: expected a string");
      preset = j.at("preset").get<std::string>();
    }
    SimulateSpec s = preset_spec(preset);
    if (j.contains("seed")) {
      const io::Json& v = j.at("seed");
      if (!v.is_number_unsigned()) throw InvalidArgument("config.seed: expected an unsigned integer");
      s.seed = v.get<std::uint64_t>();
    }
    if (j.contains("sim")) s.sim = io::sim_config_from_json(j.at("sim"), s.sim);
    if (j.contains("analysis")) {
      const io::Json& a = j.at("analysis");
      reject_unknown(a, {"outer", "envelope", "wave", "x0"}, "config.analysis");
      if (a.contains("outer")) s.analysis.outer = window_at(a, "outer");
      if (a.contains("envelope")) s.analysis.envelope = window_at(a, "envelope");
      if (a.contains("wave")) s.analysis.wave = window_at(a, "wave");
      if (a.contains("x0")) {
        if (!a.at("x0").is_number()) throw InvalidArgument("config.analysis.x0: expected a number");
        s.analysis.x0 = a.at("x0").get<double>();
      }
    }
    return s;
  } catch (const io::Json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

io::Json to_json(const SimulateSpec& spec) {
  io::Json j;
  j["command"] = "simulate";
  j["preset"] = spec.preset;
  j["seed"] = spec.seed;
  j["sim"] = io::to_json(spec.sim);
  j["analysis"] = {{"outer", window_json(spec.analysis.outer)},
                   {"envelope", window_json(spec.analysis.envelope)},
                   {"wave", window_json(spec.analysis.wave)},
                   {"x0", spec.analysis.x0}};
  return j;
}

}  // namespace okpp::cli
