//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <limits>

#include "doctest.h"
#include "pann/errors.hpp"
#include "pann/optim.hpp"

using namespace pann;

namespace {

double rosenbrock(std::span<const double> x, std::span<double> g) {
  const double a = 1 - x[0], b = x[1] - x[0] * x[0];
  if (!g.empty()) {
    g[0] = -2 * a - 400 * x[0] * b;
    g[1] = 200 * b;
  }
  return a * a + 100 * b * b;
}

// |x - target|^2 with target (-1, 2, 0.5)
const double kTarget[3] = { -1, 2, 0.5 };

double shifted_quadratic(std::span<const double> x, std::span<double> g) {
  double f = 0;
  for (int k = 0; k < 3; ++k) {
    const double d = x[k] - kTarget[k];
    f += d * d;
    if (!g.empty())
      g[k] = 2 * d;
  }
  return f;
}

double quadratic_residuals(std::span<const double> x, std::span<double> r,
                           std::span<double> j) {
  double f = 0;
  for (int k = 0; k < 3; ++k) {
    r[k] = x[k] - kTarget[k];
    f += r[k] * r[k];
  }
  if (!j.empty())
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        j[a * 3 + b] = a == b ? 1.0 : 0.0;
  return f;
}

}  // namespace

TEST_CASE("L-BFGS solves the Rosenbrock problem") {
  LbfgsOptions o;
  o.max_iterations = 500;
  o.gradient_tolerance = 1e-10;
  const LbfgsResult r = minimize_projected_lbfgs(rosenbrock, { -1.2, 1.0 },
                                                 { false, false }, o);
  CHECK(r.x[0] == doctest::Approx(1).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1).epsilon(1e-6));
  CHECK(r.f < 1e-12);
  CHECK(r.reason != StopReason::kNonFinite);
}

TEST_CASE("bounded variables stay feasible and stop at the bound") {
  const std::vector<bool> bounded { true, true, false };
  int infeasible = 0;
  const ObjectiveFn watched = [&](std::span<const double> x, std::span<double> g) {
    if (x[0] < 0 || x[1] < 0)
      ++infeasible;
    return shifted_quadratic(x, g);
  };
  const LbfgsResult r = minimize_projected_lbfgs(watched, { 3, 3, 3 }, bounded);
  CHECK(infeasible == 0);
  CHECK(r.x[0] == 0);
  CHECK(r.x[1] == doctest::Approx(2));
  CHECK(r.x[2] == doctest::Approx(0.5));
  CHECK(r.reason == StopReason::kGradientTolerance);

  SUBCASE("infeasible start is projected") {
    const LbfgsResult s = minimize_projected_lbfgs(watched, { -5, 1, 1 }, bounded);
    CHECK(infeasible == 0);
    CHECK(s.x[0] == 0);
  }
}

TEST_CASE("stop reasons") {
  LbfgsOptions o;
  o.max_iterations = 2;
  o.gradient_tolerance = 0;
  CHECK(minimize_projected_lbfgs(rosenbrock, { -1.2, 1.0 }, { false, false }, o).reason
        == StopReason::kIterationLimit);

  o.max_iterations = 100;
  o.loss_floor = 10;
  const LbfgsResult floor = minimize_projected_lbfgs(shifted_quadratic, { 5, 5, 5 },
                                                     { false, false, false }, o);
  CHECK(floor.reason == StopReason::kLossFloor);
  CHECK(floor.f <= 10);

  const ObjectiveFn nan_fn = [](std::span<const double>, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK(minimize_projected_lbfgs(nan_fn, { 1 }, { false }).reason == StopReason::kNonFinite);

  CHECK(to_string(StopReason::kLineSearchFailed) == "line_search_failed");
  CHECK_THROWS_AS(minimize_projected_lbfgs(rosenbrock, { 1, 1 }, { false }), Error);
}

TEST_CASE("Levenberg-Marquardt on a bounded linear least-squares problem") {
  const LbfgsResult r = minimize_projected_lm(quadratic_residuals, 3, { 3, 3, 3 },
                                              { true, false, false });
  CHECK(r.x[0] == 0);
  CHECK(r.x[1] == doctest::Approx(2));
  CHECK(r.x[2] == doctest::Approx(0.5));
  CHECK(r.f == doctest::Approx(1));
  CHECK(r.iterations < 20);
}

TEST_CASE("Levenberg-Marquardt on Rosenbrock residuals") {
  const ResidualFn fn = [](std::span<const double> x, std::span<double> r,
                           std::span<double> j) {
    r[0] = 1 - x[0];
    r[1] = 10 * (x[1] - x[0] * x[0]);
    if (!j.empty()) {
      j[0] = -1;
      j[1] = 0;
      j[2] = -20 * x[0];
      j[3] = 10;
    }
    return r[0] * r[0] + r[1] * r[1];
  };
  LmOptions o;
  o.gradient_tolerance = 1e-12;
  o.loss_floor = 1e-20;
  const LbfgsResult r = minimize_projected_lm(fn, 2, { -1.2, 1.0 }, { false, false }, o);
  CHECK(r.x[0] == doctest::Approx(1).epsilon(1e-8));
  CHECK(r.x[1] == doctest::Approx(1).epsilon(1e-8));
  CHECK(r.iterations < 100);
}
