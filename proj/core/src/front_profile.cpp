#include "okpp/front_profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include "okpp/error.hpp"

namespace okpp::front {

double tail_rate(double c) {
  if (!(c >= 2.0)) throw InvalidArgument("tail_rate: needs c >= 2");
  return 0.5 * (-c + std::sqrt(c * c - 4.0));
}

ScalarFrontProfile scalar_front_profile(double c, const FrontProfileOptions& opts) {
  if (!std::isfinite(c) || c < 2.0) {
    std::ostringstream os;
    os << "scalar_front_profile: no monotone front at speed " << c
       << " (the tail at 0 oscillates for c < 2)";
    throw InvalidArgument(os.str());
  }
  if (!(opts.step > 0.0) || !(opts.seed > 0.0 && opts.seed < 0.5) || !(opts.pMin > 0.0)) {
    throw InvalidArgument("scalar_front_profile: invalid options");
  }
  const double h = opts.step;
  using Y = std::array<double, 2>;
  auto f = [c](const Y& y) { return Y{y[1], -c * y[1] - y[0] * (1.0 - y[0])}; };

  const double r = 0.5 * (-c + std::sqrt(c * c + 4.0));
  Y y{1.0 - opts.seed, -r * opts.seed};
  std::vector<double> p{y[0]}, dp{y[1]};
  constexpr std::size_t kMaxSteps = 10'000'000;
  while (y[0] >= opts.pMin) {
    if (p.size() > kMaxSteps) throw NumericalFailure("scalar_front_profile: no convergence to 0");
    const Y k1 = f(y);
    const Y k2 = f({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const Y k3 = f({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const Y k4 = f({y[0] + h * k3[0], y[1] + h * k3[1]});
    for (std::size_t i = 0; i < 2; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!(y[1] < 0.0) || !std::isfinite(y[0])) {
      std::ostringstream os;
      os << "scalar_front_profile: profile stopped decreasing at p = " << y[0];
      throw NumericalFailure(os.str());
    }
    p.push_back(y[0]);
    dp.push_back(y[1]);
  }

  const auto half = static_cast<std::size_t>(
      std::find_if(p.begin(), p.end(), [](double v) { return v < 0.5; }) - p.begin());
  const double w = (p[half - 1] - 0.5) / (p[half - 1] - p[half]);
  const double origin = (static_cast<double>(half - 1) + w) * h;

  ScalarFrontProfile out;
  out.speed = c;
  out.xi.resize(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out.xi[k] = static_cast<double>(k) * h - origin;
  for (std::size_t k = 1; k + 1 < p.size(); ++k) {
    const double d2 = (p[k + 1] - 2.0 * p[k] + p[k - 1]) / (h * h);
    const double d1 = (p[k + 1] - p[k - 1]) / (2.0 * h);
    out.maxResidual = std::max(out.maxResidual, std::abs(d2 + c * d1 + p[k] * (1.0 - p[k])));
  }
  out.tailSlope = dp.back() / p.back();
  out.p = std::move(p);
  out.dp = std::move(dp);
  return out;
}

}  // namespace okpp::front
