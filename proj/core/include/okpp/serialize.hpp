#pragma once

// JSON and CSV encodings of configurations and results.

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "okpp/front_profile.hpp"
#include "okpp/limit_cycle.hpp"
#include "okpp/measure.hpp"
#include "okpp/pde.hpp"

namespace okpp::io {

using Json = nlohmann::json;

/// Parses a decimal or a rational literal "p/q" (integers p, q) exactly up to
/// the final division. Throws InvalidArgument on malformed input.
double parse_rational(std::string_view text);

/// Object with every SimConfig field. levelComponent is 1-based (1 = u1).
Json to_json(const pde::SimConfig& cfg);

/// Starts from `base` and overrides the keys present in j. Unknown keys, wrong
/// types and invalid values throw InvalidArgument. "mu" may be a number or a
/// rational string.
pde::SimConfig sim_config_from_json(const Json& j, pde::SimConfig base = {});

Json to_json(const measure::WaveTrainMeasurement& m);
Json to_json(const measure::SpeedEstimate& s);
Json to_json(const Complex& z);

/// Header t,x,u1,u2,u3.
void write_snapshots_csv(std::ostream& os, const std::vector<pde::Snapshot>& series,
                         const pde::Grid1D& g);
/// Header t,x,kind; gaps leave x empty.
void write_trace_csv(std::ostream& os, const std::vector<const pde::FrontTrace*>& traces);
/// Header t,u1,u2,u3,alpha,reBeta,imBeta.
void write_cycle_csv(std::ostream& os, const std::vector<double>& times,
                     const std::vector<StateVec>& states);
/// Header xi,p,dp.
void write_profile_csv(std::ostream& os, const front::ScalarFrontProfile& profile);

}  // namespace okpp::io
