#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <okpp/serialize.hpp>

#include "experiment.hpp"
#include "run_dir.hpp"

namespace okpp::cli {

struct CommonOptions {
  std::string out;
  std::uint64_t seed = 0;
};

/// Each command writes config.json plus its artifacts under the run directory
/// and returns the summary printed on stdout.
io::Json cmd_analyze(double mu, const std::string& muText, const CommonOptions& common);

struct CycleRequest {
  std::vector<double> mu;
  std::vector<std::string> muText;
  bool family = false;
  double dt = 1e-3;
};

io::Json cmd_cycle(const CycleRequest& req, const CommonOptions& common);

io::Json cmd_simulate(const SimulateSpec& spec, const CommonOptions& common);

io::Json cmd_front(double c, const CommonOptions& common);

}  // namespace okpp::cli
