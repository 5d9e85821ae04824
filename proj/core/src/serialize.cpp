#include "okpp/serialize.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>

#include "okpp/error.hpp"

namespace okpp::io {

namespace {

template <class T>
T parse_number(std::string_view s, std::string_view whole) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    throw InvalidArgument("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& what) {
  throw InvalidArgument("config key '" + key + "': " + what);
}

double number_at(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (!v.is_number()) bad_key(key, "expected a number");
  return v.get<double>();
}

std::size_t count_at(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad_key(key, "expected a count");
  return v.get<std::size_t>();
}

StateVec state_at(const Json& j, const std::string& key) {
  const Json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) bad_key(key, "expected an array of 3 numbers");
  StateVec s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number()) bad_key(key, "expected an array of 3 numbers");
    s[i] = v[i].get<double>();
  }
  return s;
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw InvalidArgument(where + ": unknown key '" + item.key() + "'");
    }
  }
}

Json optional_number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

double parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    const double v = parse_number<double>(text, text);
    if (!std::isfinite(v)) throw InvalidArgument("not a finite number: '" + std::string(text) + "'");
    return v;
  }
  const auto p = parse_number<long long>(text.substr(0, slash), text);
  const auto q = parse_number<long long>(text.substr(slash + 1), text);
  if (q == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
  return static_cast<double>(p) / static_cast<double>(q);
}

Json to_json(const pde::SimConfig& c) {
  Json j;
  j["mu"] = c.mu;
  j["L"] = c.grid.halfLength;
  j["dx"] = c.grid.dx;
  j["dt"] = c.dt;
  j["tEnd"] = c.tEnd;
  j["snapshotEvery"] = c.snapshotEvery;
  j["traceEvery"] = c.traceEvery;
  j["level"] = c.levelValue;
  j["levelComponent"] = c.levelComponent + 1;
  j["eps"] = c.envelopeEps;
  j["envelopeWindow"] = c.envelopeWindow;
  j["probes"] = c.probes;
  j["workers"] = c.workers;
  j["init"] = {{"preset", c.init.preset},
               {"value", {c.init.value[0], c.init.value[1], c.init.value[2]}},
               {"halfWidth", c.init.halfWidth}};
  return j;
}

pde::SimConfig sim_config_from_json(const Json& j, pde::SimConfig c) {
  reject_unknown(j,
                 {"mu", "L", "dx", "dt", "tEnd", "snapshotEvery", "traceEvery", "level",
                  "levelComponent", "eps", "envelopeWindow", "probes", "workers", "init"},
                 "config");
  try {
    if (j.contains("mu")) {
      const Json& m = j.at("mu");
      if (m.is_string()) {
        c.mu = parse_rational(m.get<std::string>());
      } else {
        c.mu = number_at(j, "mu");
      }
    }
    if (j.contains("L")) c.grid.halfLength = number_at(j, "L");
    if (j.contains("dx")) c.grid.dx = number_at(j, "dx");
    if (j.contains("dt")) c.dt = number_at(j, "dt");
    if (j.contains("tEnd")) c.tEnd = number_at(j, "tEnd");
    if (j.contains("snapshotEvery")) c.snapshotEvery = number_at(j, "snapshotEvery");
    if (j.contains("traceEvery")) c.traceEvery = number_at(j, "traceEvery");
    if (j.contains("level")) c.levelValue = number_at(j, "level");
    if (j.contains("levelComponent")) {
      const std::size_t k = count_at(j, "levelComponent");
      if (k < 1 || k > 3) bad_key("levelComponent", "must be 1, 2 or 3");
      c.levelComponent = k - 1;
    }
    if (j.contains("eps")) c.envelopeEps = number_at(j, "eps");
    if (j.contains("envelopeWindow")) c.envelopeWindow = number_at(j, "envelopeWindow");
    if (j.contains("workers")) c.workers = count_at(j, "workers");
    if (j.contains("probes")) {
      const Json& p = j.at("probes");
      if (!p.is_array()) bad_key("probes", "expected an array of numbers");
      c.probes.clear();
      for (const Json& x : p) {
        if (!x.is_number()) bad_key("probes", "expected an array of numbers");
        c.probes.push_back(x.get<double>());
      }
    }
    if (j.contains("init")) {
      const Json& in = j.at("init");
      reject_unknown(in, {"preset", "value", "halfWidth"}, "config.init");
      if (in.contains("preset")) {
        if (!in.at("preset").is_string()) bad_key("init.preset", "expected a string");
        c.init.preset = in.at("preset").get<std::string>();
      }
      if (in.contains("value")) c.init.value = state_at(in, "value");
      if (in.contains("halfWidth")) c.init.halfWidth = number_at(in, "halfWidth");
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

Json to_json(const measure::WaveTrainMeasurement& m) {
  Json j;
  j["gamma"] = m.gamma;
  j["wavelength"] = optional_number(m.wavelength);
  j["homogeneous"] = !std::isfinite(m.wavelength);
  j["peakWavelength"] = m.peakWavelength ? Json(*m.peakWavelength) : Json(nullptr);
  j["betaMax"] = m.betaMax;
  j["period"] = m.period;
  j["kappa"] = m.kappa;
  j["sigma"] = m.sigma;
  j["speed"] = m.speed ? Json(*m.speed) : Json(nullptr);
  j["lag"] = m.lag;
  j["phaseSlope"] = m.phaseSlope;
  j["x0"] = m.x0;
  j["snapshotTime"] = m.snapshotTime;
  return j;
}

Json to_json(const measure::SpeedEstimate& s) {
  return {{"speed", s.speed}, {"intercept", s.intercept}, {"r2", s.r2}, {"samples", s.samples}};
}

Json to_json(const Complex& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void write_snapshots_csv(std::ostream& os, const std::vector<pde::Snapshot>& series,
                         const pde::Grid1D& g) {
  os << "t,x,u1,u2,u3\n" << std::setprecision(12);
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.field.size(); ++i) {
      const StateVec& u = s.field[i];
      os << s.t << ',' << g.x(i) << ',' << u[0] << ',' << u[1] << ',' << u[2] << '\n';
    }
  }
}

void write_trace_csv(std::ostream& os, const std::vector<const pde::FrontTrace*>& traces) {
  os << "t,x,kind\n" << std::setprecision(12);
  for (const auto* tr : traces) {
    const std::string kind = pde::to_string(tr->kind);
    for (std::size_t k = 0; k < tr->times.size(); ++k) {
      os << tr->times[k] << ',';
      if (tr->positions[k]) os << *tr->positions[k];
      os << ',' << kind << '\n';
    }
  }
}

void write_cycle_csv(std::ostream& os, const std::vector<double>& times,
                     const std::vector<StateVec>& states) {
  if (times.size() != states.size()) throw InvalidArgument("write_cycle_csv: size mismatch");
  os << "t,u1,u2,u3,alpha,reBeta,imBeta\n" << std::setprecision(12);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const StateVec& u = states[k];
    const auto c = decompose(u);
    os << times[k] << ',' << u[0] << ',' << u[1] << ',' << u[2] << ',' << c.alpha << ','
       << c.beta.real() << ',' << c.beta.imag() << '\n';
  }
}

void write_profile_csv(std::ostream& os, const front::ScalarFrontProfile& profile) {
  os << "xi,p,dp\n" << std::setprecision(12);
  for (std::size_t k = 0; k < profile.p.size(); ++k) {
    os << profile.xi[k] << ',' << profile.p[k] << ',' << profile.dp[k] << '\n';
  }
}

}  // namespace okpp::io
