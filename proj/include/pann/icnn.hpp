//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

namespace pann {

struct NetworkArchitecture {
  int input_dim = 4;
  std::vector<int> hidden_layers { 8 };
  /// Non-negative weights (biases unrestricted); yields an input convex,
  /// non-decreasing network.
  bool constrain_weights = true;

  /// Throws Error(kInvalidArgument).
  void validate() const;

  /// [input_dim, hidden_1, ..., hidden_H]
  std::vector<int> widths() const;

  friend bool operator==(const NetworkArchitecture &,
                         const NetworkArchitecture &) = default;
};

std::size_t parameter_count(const NetworkArchitecture &arch);

/// Network parameters stored as one flat vector. Layer h contributes its
/// row-major weight matrix (n_h x n_{h-1}) followed by its biases; the output
/// weights come last.
class NetworkParams {
public:
  NetworkParams() = default;
  explicit NetworkParams(NetworkArchitecture arch);
  NetworkParams(NetworkArchitecture arch, std::vector<double> flat);

  const NetworkArchitecture &architecture() const { return arch_; }
  std::span<const double> flat() const { return theta_; }
  std::span<double> flat() { return theta_; }
  std::size_t size() const { return theta_.size(); }

  /// Offsets of layer h (1-based) weights and biases in the flat vector.
  std::size_t weight_offset(int layer) const;
  std::size_t bias_offset(int layer) const;
  std::size_t output_offset() const;

  double &weight(int layer, int row, int col);
  double weight(int layer, int row, int col) const;
  double &bias(int layer, int row);
  double bias(int layer, int row) const;
  double &output_weight(int row);
  double output_weight(int row) const;

  /// true for weight entries, false for biases.
  const std::vector<bool> &weight_mask() const { return mask_; }

  friend bool operator==(const NetworkParams &a, const NetworkParams &b) {
    return a.arch_ == b.arch_ && a.theta_ == b.theta_;
  }

private:
  void build_layout();

  NetworkArchitecture arch_;
  std::vector<double> theta_;
  std::vector<std::size_t> layer_offsets_;
  std::vector<bool> mask_;
};

/// Overflow-safe log(1 + exp(x)).
double softplus(double x);
/// Derivative of softplus.
double logistic(double x);

/// Network output. Throws Error(kDimensionMismatch) on wrong input length.
double forward(const NetworkParams &params, std::span<const double> inputs);

/// d psi / d inputs by reverse accumulation.
std::vector<double> input_gradient(const NetworkParams &params,
                                   std::span<const double> inputs);

struct ForwardResult {
  double value = 0;
  std::vector<double> gradient;
};
ForwardResult forward_with_gradient(const NetworkParams &params,
                                    std::span<const double> inputs);

/// Adds d/d theta [ direction . grad_inputs psi(inputs) ] to out.
void accumulate_directional_parameter_gradient(
    const NetworkParams &params, std::span<const double> inputs,
    std::span<const double> direction, std::span<double> out);

/// Clamps every weight entry to max(w, 0); biases are left untouched.
NetworkParams project_nonnegative(NetworkParams params);
void project_nonnegative_inplace(std::span<double> theta,
                                 const std::vector<bool> &weight_mask);

/// Seeded initialization: weights U[0, 0.5] when constrained, U[-0.5, 0.5]
/// otherwise; biases U[-0.5, 0.5].
NetworkParams initialize_network(const NetworkArchitecture &arch,
                                 std::uint64_t seed);

void to_json(nlohmann::json &j, const NetworkArchitecture &a);
void from_json(const nlohmann::json &j, NetworkArchitecture &a);
void to_json(nlohmann::json &j, const NetworkParams &p);
void from_json(const nlohmann::json &j, NetworkParams &p);

}  // namespace pann
