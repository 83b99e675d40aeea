#include "growth/ergodic.hpp"

#include <cmath>
#include <numbers>

#include "growth/errors.hpp"
#include "growth/group_walk.hpp"

namespace growth {

namespace {

double wrap(double v) { return v - std::floor(v); }

const std::vector<Observable>& catalog() {
  static const std::vector<Observable> obs{
      {"const", [](TorusPoint) { return 1.0; }, 1.0},
      {"cos2pix", [](TorusPoint p) { return std::cos(2 * std::numbers::pi * p.x); }, 0.0},
      {"cos2piy", [](TorusPoint p) { return std::cos(2 * std::numbers::pi * p.y); }, 0.0},
      {"cos2pi(x+y)", [](TorusPoint p) { return std::cos(2 * std::numbers::pi * (p.x + p.y)); },
       0.0},
      {"indicator", [](TorusPoint p) { return p.x < 0.25 && p.y < 0.25 ? 1.0 : 0.0; },
       1.0 / 16.0},
  };
  return obs;
}

}  // namespace

TorusPoint TorusAction::act(std::int64_t m, std::int64_t n, TorusPoint p) const {
  return {wrap(p.x + static_cast<double>(m) * theta1), wrap(p.y + static_cast<double>(n) * theta2)};
}

TorusAction rotation_preset(const std::string& name) {
  const double golden = (std::sqrt(5.0) - 1) / 2, silver = std::sqrt(2.0) - 1;
  if (name == "golden") return {golden, silver};
  if (name == "silver") return {silver, golden};
  throw InvalidInput("unknown rotation preset '" + name + "' (expected golden or silver)");
}

const Observable& observable(const std::string& name) {
  for (const auto& o : catalog()) {
    if (o.name == name) return o;
  }
  throw InvalidInput("unknown observable '" + name + "'");
}

std::vector<std::string> observable_names() {
  std::vector<std::string> out;
  for (const auto& o : catalog()) out.push_back(o.name);
  return out;
}

ErgodicTrace ergodic_trace(const TorusAction& action, const Observable& f, TorusPoint p,
                           std::size_t n_max, std::span<const Element> u) {
  LatticeModel z2(2);
  const auto shells = word_shells(z2, u, n_max);
  ErgodicTrace trace;
  trace.observable = f.name;
  trace.start = p;
  trace.target = f.integral;
  double sum = 0;
  std::size_t count = 0;
  for (const auto& shell : shells) {
    for (const auto& g : shell) {
      // g^-1 . p
      sum += f.f(action.act(-g.c[0], -g.c[1], p));
    }
    count += shell.size();
    const double avg = sum / static_cast<double>(count);
    trace.values.push_back(avg);
    trace.errors.push_back(std::abs(avg - trace.target));
  }
  for (std::size_t n = (3 * n_max) / 4; n <= n_max; ++n) {
    trace.tail_error = std::max(trace.tail_error, trace.errors[n]);
  }
  return trace;
}

double ball_average(const TorusAction& action, const Observable& f, TorusPoint p, std::size_t n,
                    std::span<const Element> u) {
  return ergodic_trace(action, f, p, n, u).values[n];
}

}  // namespace growth
