#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "growth/group_model.hpp"

namespace growth {

struct TorusPoint {
  double x = 0;
  double y = 0;
};

/// Z^2 acting on [0,1)^2 by (m,n).(x,y) = (x + m t1, y + n t2) mod 1.
struct TorusAction {
  double theta1 = 0;
  double theta2 = 0;

  TorusPoint act(std::int64_t m, std::int64_t n, TorusPoint p) const;
};

/// "golden": ((sqrt 5 - 1)/2, sqrt 2 - 1); "silver": (sqrt 2 - 1, (sqrt 5 - 1)/2).
TorusAction rotation_preset(const std::string& name);

/// Catalog entry with its exact space average.
struct Observable {
  std::string name;
  std::function<double(TorusPoint)> f;
  double integral = 0;
};

/// "const", "cos2pix", "cos2piy", "cos2pi(x+y)", "indicator" ([0,1/4)^2).
const Observable& observable(const std::string& name);
std::vector<std::string> observable_names();

/// (1/|B_n|) sum over g in B_n of f(g^-1 . p), B_n the word ball of radius n
/// for the Z^2 generating set u.
double ball_average(const TorusAction& action, const Observable& f, TorusPoint p, std::size_t n,
                    std::span<const Element> u);

struct ErgodicTrace {
  std::string observable;
  TorusPoint start;
  double target = 0;
  std::vector<double> values;  // values[n] = A_n f(start), n = 0..N
  std::vector<double> errors;  // |values[n] - target|
  /// max error over n in [3N/4, N].
  double tail_error = 0;
};

/// Averages for n = 0..N, accumulating one word shell at a time.
ErgodicTrace ergodic_trace(const TorusAction& action, const Observable& f, TorusPoint p,
                           std::size_t n_max, std::span<const Element> u);

}  // namespace growth
