//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/icnn.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "kernels/activation.hpp"
#include "pann/errors.hpp"
#include "pann/kernels.hpp"

namespace pann {

void NetworkArchitecture::validate() const {
  if (input_dim != 4 && input_dim != 6)
    throw Error(ErrorCode::kInvalidArgument,
                "input_dim must be 4 (isotropic) or 6 (transversely isotropic)");
  if (hidden_layers.empty())
    throw Error(ErrorCode::kInvalidArgument, "at least one hidden layer");
  for (int n: hidden_layers)
    if (n < 1)
      throw Error(ErrorCode::kInvalidArgument,
                  "every hidden layer needs at least one node");
}

std::vector<int> NetworkArchitecture::widths() const {
  std::vector<int> w { input_dim };
  w.insert(w.end(), hidden_layers.begin(), hidden_layers.end());
  return w;
}

std::size_t parameter_count(const NetworkArchitecture &arch) {
  const std::vector<int> w = arch.widths();
  std::size_t p = 0;
  for (std::size_t h = 1; h < w.size(); ++h)
    p += static_cast<std::size_t>(w[h]) * w[h - 1] + w[h];
  return p + w.back();
}

NetworkParams::NetworkParams(NetworkArchitecture arch)
    : arch_(std::move(arch)) {
  arch_.validate();
  theta_.assign(parameter_count(arch_), 0.0);
  build_layout();
}

NetworkParams::NetworkParams(NetworkArchitecture arch, std::vector<double> flat)
    : arch_(std::move(arch)), theta_(std::move(flat)) {
  arch_.validate();
  if (theta_.size() != parameter_count(arch_))
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter vector has " + std::to_string(theta_.size())
                    + " entries, architecture needs "
                    + std::to_string(parameter_count(arch_)));
  build_layout();
}

void NetworkParams::build_layout() {
  const std::vector<int> w = arch_.widths();
  layer_offsets_.assign(1, 0);
  mask_.assign(theta_.size(), true);
  std::size_t off = 0;
  for (std::size_t h = 1; h < w.size(); ++h) {
    layer_offsets_.push_back(off);
    off += static_cast<std::size_t>(w[h]) * w[h - 1];
    for (int r = 0; r < w[h]; ++r)
      mask_[off + r] = false;
    off += w[h];
  }
  layer_offsets_.push_back(off);
}

std::size_t NetworkParams::weight_offset(int layer) const {
  return layer_offsets_.at(layer);
}

std::size_t NetworkParams::bias_offset(int layer) const {
  const std::vector<int> w = arch_.widths();
  return layer_offsets_.at(layer)
         + static_cast<std::size_t>(w.at(layer)) * w.at(layer - 1);
}

std::size_t NetworkParams::output_offset() const {
  return layer_offsets_.back();
}

double &NetworkParams::weight(int layer, int row, int col) {
  const int m = layer == 1 ? arch_.input_dim : arch_.hidden_layers[layer - 2];
  return theta_[weight_offset(layer) + row * m + col];
}

double NetworkParams::weight(int layer, int row, int col) const {
  const int m = layer == 1 ? arch_.input_dim : arch_.hidden_layers[layer - 2];
  return theta_[weight_offset(layer) + row * m + col];
}

double &NetworkParams::bias(int layer, int row) {
  return theta_[bias_offset(layer) + row];
}

double NetworkParams::bias(int layer, int row) const {
  return theta_[bias_offset(layer) + row];
}

double &NetworkParams::output_weight(int row) {
  return theta_[output_offset() + row];
}

double NetworkParams::output_weight(int row) const {
  return theta_[output_offset() + row];
}

double softplus(double x) {
  return kernels::activate(x).sp;
}

double logistic(double x) {
  return kernels::activate(x).sig;
}

namespace {
  void check_inputs(const NetworkParams &params, std::size_t n) {
    if (n != static_cast<std::size_t>(params.architecture().input_dim))
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected " + std::to_string(params.architecture().input_dim)
                      + " inputs, got " + std::to_string(n));
  }
}  // namespace

ForwardResult forward_with_gradient(const NetworkParams &params,
                                    std::span<const double> inputs) {
  check_inputs(params, inputs.size());
  const std::vector<int> widths = params.architecture().widths();
  const kernels::NetworkView view { widths, params.flat().data() };
  ForwardResult r;
  r.gradient.resize(inputs.size());
  // Single-point evaluation always uses the scalar reference kernel, so
  // model outputs do not depend on the CPU.
  kernels::scalar::forward_batch(view, { inputs.data(), 1, 1 }, &r.value,
                                 r.gradient.data(), 1);
  return r;
}

double forward(const NetworkParams &params, std::span<const double> inputs) {
  check_inputs(params, inputs.size());
  const std::vector<int> widths = params.architecture().widths();
  const kernels::NetworkView view { widths, params.flat().data() };
  double psi = 0;
  kernels::scalar::forward_batch(view, { inputs.data(), 1, 1 }, &psi, nullptr,
                                 0);
  return psi;
}

std::vector<double> input_gradient(const NetworkParams &params,
                                   std::span<const double> inputs) {
  return forward_with_gradient(params, inputs).gradient;
}

void accumulate_directional_parameter_gradient(
    const NetworkParams &params, std::span<const double> inputs,
    std::span<const double> direction, std::span<double> out) {
  check_inputs(params, inputs.size());
  check_inputs(params, direction.size());
  if (out.size() != params.size())
    throw Error(ErrorCode::kDimensionMismatch, "gradient buffer size");
  const std::vector<int> widths = params.architecture().widths();
  const kernels::NetworkView view { widths, params.flat().data() };
  kernels::scalar::dual_backward_batch(view, { inputs.data(), 1, 1 },
                                       direction.data(), out.data());
}

void project_nonnegative_inplace(std::span<double> theta,
                                 const std::vector<bool> &weight_mask) {
  for (std::size_t k = 0; k < theta.size(); ++k)
    if (weight_mask[k] && theta[k] < 0)
      theta[k] = 0;
}

NetworkParams project_nonnegative(NetworkParams params) {
  project_nonnegative_inplace(params.flat(), params.weight_mask());
  return params;
}

NetworkParams initialize_network(const NetworkArchitecture &arch,
                                 std::uint64_t seed) {
  NetworkParams p(arch);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-0.5, 0.5), pos(0.0, 0.5);
  const auto &mask = p.weight_mask();
  auto theta = p.flat();
  for (std::size_t k = 0; k < theta.size(); ++k)
    theta[k] = (mask[k] && arch.constrain_weights) ? pos(rng) : sym(rng);
  return p;
}

void to_json(nlohmann::json &j, const NetworkArchitecture &a) {
  j = nlohmann::json { { "input_dim", a.input_dim },
                       { "hidden_layers", a.hidden_layers },
                       { "constrain_weights", a.constrain_weights } };
}

void from_json(const nlohmann::json &j, NetworkArchitecture &a) {
  j.at("input_dim").get_to(a.input_dim);
  j.at("hidden_layers").get_to(a.hidden_layers);
  j.at("constrain_weights").get_to(a.constrain_weights);
  a.validate();
}

void to_json(nlohmann::json &j, const NetworkParams &p) {
  const auto flat = p.flat();
  j = nlohmann::json { { "architecture", p.architecture() },
                       { "parameters",
                         std::vector<double>(flat.begin(), flat.end()) } };
}

void from_json(const nlohmann::json &j, NetworkParams &p) {
  p = NetworkParams(j.at("architecture").get<NetworkArchitecture>(),
                    j.at("parameters").get<std::vector<double>>());
}

}  // namespace pann
