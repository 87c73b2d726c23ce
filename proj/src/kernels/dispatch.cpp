//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include <atomic>
#include <cstdlib>
#include <string>

#include "pann/errors.hpp"
#include "pann/kernels.hpp"

namespace pann::kernels {
namespace {
  bool cpu_has_avx2() {
#if defined(PANN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
  }

  Isa initial_isa() {
    if (const char *env = std::getenv("PANN_KERNEL")) {
      const std::string v(env);
      if (v == "scalar")
        return Isa::kScalar;
    }
    return detected_isa();
  }

  std::atomic<Isa> &active() {
    static std::atomic<Isa> isa { initial_isa() };
    return isa;
  }
}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
  case Isa::kScalar:
    return "scalar";
  case Isa::kAvx2:
    return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar)
    return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

Isa detected_isa() {
  return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

Isa active_isa() {
  return active().load(std::memory_order_relaxed);
}

void set_active_isa(Isa isa) {
  if (!isa_available(isa))
    throw Error(ErrorCode::kInvalidArgument,
                std::string("kernel variant unavailable: ")
                    + std::string(to_string(isa)));
  active().store(isa, std::memory_order_relaxed);
}

void forward_batch(const NetworkView &net, const BatchInputs &x, double *psi,
                   double *grad, std::size_t grad_stride) {
#ifdef PANN_HAVE_AVX2
  if (active_isa() == Isa::kAvx2)
    return avx2::forward_batch(net, x, psi, grad, grad_stride);
#endif
  scalar::forward_batch(net, x, psi, grad, grad_stride);
}

void dual_backward_batch(const NetworkView &net, const BatchInputs &x,
                         const double *directions, double *theta_grad) {
#ifdef PANN_HAVE_AVX2
  if (active_isa() == Isa::kAvx2)
    return avx2::dual_backward_batch(net, x, directions, theta_grad);
#endif
  scalar::dual_backward_batch(net, x, directions, theta_grad);
}

void input_gradient_jacobian(const NetworkView &net, const BatchInputs &x,
                             double *rows, std::size_t row_stride) {
  scalar::input_gradient_jacobian(net, x, rows, row_stride);
}

}  // namespace pann::kernels
