//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace pann::kernels {

/// Non-owning view of a network for the batched kernels. widths holds
/// [input_dim, hidden_1, ..., hidden_H]; theta uses the NetworkParams layout.
struct NetworkView {
  std::span<const int> widths;
  const double *theta = nullptr;
};

/// Structure-of-arrays batch: component k of tuple i lives at
/// data[k * stride + i].
struct BatchInputs {
  const double *data = nullptr;
  std::size_t stride = 0;
  std::size_t count = 0;
};

enum class Isa {
  kScalar,
  kAvx2,
};

std::string_view to_string(Isa isa);

/// Best variant supported by this build and CPU.
Isa detected_isa();
/// Variant used by the dispatching entry points. Honors PANN_KERNEL=scalar.
Isa active_isa();
/// Throws Error(kInvalidArgument) if the variant is unavailable.
void set_active_isa(Isa isa);
bool isa_available(Isa isa);

/// psi[i] and, if grad != nullptr, grad[k * grad_stride + i] = d psi/d x_k.
void forward_batch(const NetworkView &net, const BatchInputs &x, double *psi,
                   double *grad, std::size_t grad_stride);

/// theta_grad += sum_i d/d theta [ v_i . grad_x psi(x_i) ].
/// directions uses the same layout (and stride) as x.
void dual_backward_batch(const NetworkView &net, const BatchInputs &x,
                         const double *directions, double *theta_grad);

/// Rows d(dpsi/dx_a)/dtheta for every tuple i and input a, written to
/// rows[(i * m + a) * row_stride + k], where m is the input width. Rows are
/// accumulated into, so callers zero them first. Scalar only.
void input_gradient_jacobian(const NetworkView &net, const BatchInputs &x,
                             double *rows, std::size_t row_stride);

namespace scalar {
  void forward_batch(const NetworkView &net, const BatchInputs &x, double *psi,
                     double *grad, std::size_t grad_stride);
  void dual_backward_batch(const NetworkView &net, const BatchInputs &x,
                           const double *directions, double *theta_grad);
  void input_gradient_jacobian(const NetworkView &net, const BatchInputs &x,
                               double *rows, std::size_t row_stride);
}  // namespace scalar

#ifdef PANN_HAVE_AVX2
namespace avx2 {
  void forward_batch(const NetworkView &net, const BatchInputs &x, double *psi,
                     double *grad, std::size_t grad_stride);
  void dual_backward_batch(const NetworkView &net, const BatchInputs &x,
                           const double *directions, double *theta_grad);

  /// Lane-wise helpers exposed for equivalence tests; n must be a multiple
  /// of 4.
  void softplus_logistic(const double *x, double *sp, double *sig,
                         std::size_t n);
}  // namespace avx2
#endif

}  // namespace pann::kernels
