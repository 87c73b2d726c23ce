//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "pann/dataset.hpp"
#include "pann/optim.hpp"
#include "pann/pann_model.hpp"

namespace pann {

enum class Optimizer {
  kLbfgs,
  kLevenbergMarquardt,
};

std::string_view to_string(Optimizer o);
/// Accepts "lbfgs" and "lm". Throws Error(kConfigError).
Optimizer parse_optimizer(std::string_view s);

struct CalibrationConfig {
  int restarts = 30;
  int max_iterations = 500;
  double gradient_tolerance = 1e-9;
  double loss_floor = 1e-12;  // kPa^2
  std::uint64_t seed = 0;
  /// Worker threads for the restart loop; results do not depend on it.
  int threads = 1;
  int memory = 10;
  /// Used for the invariant-based variants; the F -> P baseline always
  /// runs L-BFGS.
  Optimizer optimizer = Optimizer::kLbfgs;

  void validate() const;
};

void to_json(nlohmann::json &j, const CalibrationConfig &c);
void from_json(const nlohmann::json &j, CalibrationConfig &c);

struct RestartRecord {
  std::uint64_t seed = 0;
  double loss = 0;  // +inf when the restart went non-finite
  int iterations = 0;
  StopReason reason = StopReason::kIterationLimit;
};

struct CalibrationStats {
  std::vector<RestartRecord> restarts;
  int best_restart = 0;
  double train_mse = 0;
  std::optional<double> test_mse;
  std::uint64_t seed = 0;
};

void to_json(nlohmann::json &j, const CalibrationStats &s);

struct CalibrationResult {
  PannModel model;
  CalibrationStats stats;
};

struct SimpleFPCalibrationResult {
  SimpleFPModel model;
  CalibrationStats stats;
};

/// Mean of squared Frobenius norms of the stress residuals, kPa^2.
/// Throws Error(kEmptyDataset).
double loss(const PannModel &model, const Dataset &data);
/// Residuals on P = F T with F = sqrt(C).
double loss(const SimpleFPModel &model, const Dataset &data);
/// Residuals on the second Piola-Kirchhoff stress, T = F^-1 P.
double loss_on_second_pk(const SimpleFPModel &model, const Dataset &data);

/// Training objective for the invariant-based variants over a flat network
/// parameter vector. Precomputes per-tuple invariants and stress bases, then
/// evaluates the loss and its exact gradient with the batched kernels.
class PannObjective {
public:
  PannObjective(ModelVariant variant, MaterialSymmetry sym,
                NetworkArchitecture arch, const Dataset &data);

  std::size_t parameter_count() const { return n_params_; }
  const NetworkArchitecture &architecture() const { return arch_; }

  struct Workspace {
    std::vector<double> psi, grad, dir, rows;
  };
  Workspace make_workspace() const;

  /// Loss; writes d loss / d theta into grad when it is non-empty.
  double evaluate(std::span<const double> theta, std::span<double> grad,
                  Workspace &ws) const;
  double evaluate(std::span<const double> theta, std::span<double> grad) const;

  /// Number of weighted residuals; their sum of squares is the loss.
  std::size_t residual_count() const { return 6 * n_; }

  /// Weighted residuals (length residual_count()) and, when jacobian is
  /// non-empty, their row-major derivative (residual_count() x P). Returns
  /// the loss.
  double residuals(std::span<const double> theta, std::span<double> rho,
                   std::span<double> jacobian, Workspace &ws) const;

private:
  /// Gradient shifts from the normalization constants and their
  /// derivatives d shift_a / d g0_b (row-major m x m) for reference
  /// gradient g0.
  std::array<double, 6> normalization_shift(std::span<const double> g0,
                                            double *jac) const;

  ModelVariant variant_;
  MaterialSymmetry sym_;
  NetworkArchitecture arch_;
  std::vector<int> widths_;
  std::size_t n_params_;
  std::size_t n_;       // tuples
  std::size_t stride_;  // n_ (+1 for the reference point when normalized)
  int m_;               // inputs
  bool normalized_;
  // structure-of-arrays: x[k * stride + i], basis[(a * 6 + c) * n + i]
  std::vector<double> x_, basis_, target_;
};

class SimpleFPObjective {
public:
  SimpleFPObjective(int nodes, const Dataset &data);
  std::size_t parameter_count() const {
    return SimpleFPModel::parameter_count(nodes_);
  }
  double evaluate(std::span<const double> theta, std::span<double> grad) const;

private:
  int nodes_;
  std::vector<std::array<double, 9>> f_, p_;
};

/// Central differences of the loss, step 1e-6 max(1, |theta_k|).
std::vector<double> loss_gradient(const PannObjective &objective,
                                  std::span<const double> theta);
std::vector<double> loss_gradient(const SimpleFPObjective &objective,
                                  std::span<const double> theta);
/// Convenience form on a model and a dataset.
std::vector<double> loss_gradient(const PannModel &model, const Dataset &data);

/// Multi-restart projected L-BFGS. Restart r starts from the seeded
/// initialization with seed + r; the kept restart is the minimum by
/// (loss, restart index). Throws Error(kEmptyDataset) or, when every
/// restart ends non-finite, Error(kNonFiniteLoss).
CalibrationResult calibrate(ModelVariant variant, const MaterialSymmetry &sym,
                            NetworkArchitecture arch, const SplitDataset &data,
                            const CalibrationConfig &config);

SimpleFPCalibrationResult calibrate_simple_fp(int nodes,
                                              const SplitDataset &data,
                                              const CalibrationConfig &config);

}  // namespace pann
