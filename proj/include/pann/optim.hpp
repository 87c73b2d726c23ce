//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pann {

/// Returns f(x) and writes grad f(x) into the second argument.
using ObjectiveFn = std::function<double(std::span<const double>, std::span<double>)>;

struct LbfgsOptions {
  int max_iterations = 500;
  /// Stop when the infinity norm of the projected gradient drops below this.
  double gradient_tolerance = 1e-9;
  /// Stop when f <= loss_floor.
  double loss_floor = 1e-12;
  int memory = 10;
  int max_backtracks = 40;
};

enum class StopReason {
  kGradientTolerance,
  kLossFloor,
  kIterationLimit,
  kLineSearchFailed,
  kNonFinite,
};

std::string_view to_string(StopReason r);

struct LbfgsResult {
  std::vector<double> x;
  double f = 0;
  int iterations = 0;
  int evaluations = 0;
  StopReason reason = StopReason::kIterationLimit;
};

/// Projected L-BFGS for min f(x) subject to x_k >= 0 wherever bounded[k].
/// Bound-active variables (x_k = 0 with a positive gradient) are frozen for
/// the step; the trial point is projected back and accepted by an Armijo
/// test along the projection arc. A failed line search drops the curvature
/// memory once and retries along the projected steepest descent.
LbfgsResult minimize_projected_lbfgs(const ObjectiveFn &f,
                                     std::vector<double> x0,
                                     const std::vector<bool> &bounded,
                                     const LbfgsOptions &options = {});

/// Returns sum_i r_i(x)^2, writes the residuals r and, when the third
/// argument is non-empty, the row-major Jacobian dr/dx.
using ResidualFn = std::function<double(std::span<const double>, std::span<double>,
                                        std::span<double>)>;

struct LmOptions {
  int max_iterations = 500;
  /// Same projected-gradient test as LbfgsOptions, on grad = 2 J^T r.
  double gradient_tolerance = 1e-9;
  double loss_floor = 1e-12;
  double initial_damping = 1e-3;
  /// Give up after this many consecutive rejected steps.
  int max_rejections = 40;
};

/// Projected Levenberg-Marquardt for min |r(x)|^2 subject to x_k >= 0
/// wherever bounded[k]. Damping is relative to diag(J^T J); bound-active
/// variables are frozen for the step, and the trial point is projected.
/// `iterations` counts Jacobian evaluations.
LbfgsResult minimize_projected_lm(const ResidualFn &fn, std::size_t residuals,
                                  std::vector<double> x0,
                                  const std::vector<bool> &bounded,
                                  const LmOptions &options = {});

}  // namespace pann
