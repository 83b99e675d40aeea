#include "doctest.h"

#include <cmath>

#include "growth/ergodic.hpp"
#include "growth/errors.hpp"
#include "growth/group_model.hpp"
#include "oracles.hpp"

using namespace growth;

TEST_CASE("golden rotation averages of cos 2 pi x match the Fejer-kernel closed form") {
  const auto action = rotation_preset("golden");
  LatticeModel z2(2);
  const auto trace =
      ergodic_trace(action, observable("cos2pix"), {0.1, 0.2}, 100, z2.generating_set("standard"));
  REQUIRE(trace.values.size() == 101);
  for (std::size_t n = 0; n <= 100; ++n) {
    CHECK(std::abs(trace.values[n] - oracle::dirichlet_cos_average(0.1, action.theta1, n)) < 1e-8);
  }
  CHECK(ball_average(action, observable("cos2pix"), {0.1, 0.2}, 37, z2.generating_set("standard")) ==
        doctest::Approx(trace.values[37]).epsilon(1e-12));
}

TEST_CASE("constant observable has zero error") {
  LatticeModel z2(2);
  const auto trace = ergodic_trace(rotation_preset("golden"), observable("const"), {0.3, 0.7}, 50,
                                   z2.generating_set("standard"));
  for (double e : trace.errors) CHECK(e == 0.0);
  CHECK(trace.tail_error == 0.0);
}

TEST_CASE("averages are linear in the observable") {
  LatticeModel z2(2);
  const auto action = rotation_preset("silver");
  const Observable& fx = observable("cos2pix");
  const Observable& fy = observable("cos2piy");
  const Observable sum{"sum", [&](TorusPoint p) { return 2 * fx.f(p) - 3 * fy.f(p); }, 0.0};
  const TorusPoint p{0.25, 0.6};
  for (std::size_t n : {0u, 5u, 17u}) {
    const double a = ball_average(action, fx, p, n, z2.generating_set("standard"));
    const double b = ball_average(action, fy, p, n, z2.generating_set("standard"));
    CHECK(ball_average(action, sum, p, n, z2.generating_set("standard")) ==
          doctest::Approx(2 * a - 3 * b).epsilon(1e-12));
  }
}

TEST_CASE("the action is a homomorphism from Z^2") {
  const auto action = rotation_preset("golden");
  const TorusPoint p{0.31, 0.77};
  for (int m1 = -3; m1 <= 3; ++m1)
    for (int n1 = -3; n1 <= 3; ++n1) {
      const auto once = action.act(m1 + 2, n1 - 5, p);
      const auto twice = action.act(m1, n1, action.act(2, -5, p));
      CHECK(std::fmod(once.x - twice.x + 1.5, 1.0) == doctest::Approx(0.5));
      CHECK(std::fmod(once.y - twice.y + 1.5, 1.0) == doctest::Approx(0.5));
      CHECK(once.x >= 0);
      CHECK(once.x < 1);
    }
  const auto id = action.act(0, 0, p);
  CHECK(id.x == doctest::Approx(p.x));
  CHECK(id.y == doctest::Approx(p.y));
}

TEST_CASE("convergence toward the space average") {
  LatticeModel z2(2);
  const auto trace = ergodic_trace(rotation_preset("golden"), observable("cos2pix"), {0.1, 0.2},
                                   300, z2.generating_set("standard"));
  CHECK(trace.errors[200] < 0.05);
  const auto ind = ergodic_trace(rotation_preset("golden"), observable("indicator"), {0.1, 0.2},
                                 200, z2.generating_set("standard"));
  CHECK(ind.target == doctest::Approx(1.0 / 16));
  CHECK(ind.errors[200] < 0.01);
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(observable("sin"), InvalidInput);
  CHECK_THROWS_AS(rotation_preset("bronze"), InvalidInput);
  CHECK(observable_names().size() == 5);
}
