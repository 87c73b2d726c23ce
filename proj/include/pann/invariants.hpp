//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "pann/tensor3.hpp"

namespace pann {

/// Transversely isotropic structural tensor G = diag(beta^2, 1/beta, 1/beta)
/// for a preferred direction parallel to X1.
class StructuralTensor {
public:
  explicit StructuralTensor(double beta);

  double beta() const { return beta_; }
  const SymTensor3 &tensor() const { return g_; }
  double trace() const { return trace_; }

private:
  double beta_;
  SymTensor3 g_;
  double trace_;
};

class MaterialSymmetry {
public:
  static MaterialSymmetry isotropic() { return MaterialSymmetry(); }
  static MaterialSymmetry transversely_isotropic(double beta) {
    return MaterialSymmetry(StructuralTensor(beta));
  }

  bool is_isotropic() const { return !structural_.has_value(); }

  /// Throws Error(kWrongSymmetry) for isotropic symmetry.
  const StructuralTensor &structural() const;

  /// Number of network inputs: (I1, I2, I3, I1*) or (I1, ..., I5, I1*).
  int input_dim() const { return is_isotropic() ? 4 : 6; }

private:
  MaterialSymmetry() = default;
  explicit MaterialSymmetry(StructuralTensor g): structural_(g) { }

  std::optional<StructuralTensor> structural_;
};

/// Invariants of C for one symmetry group, their derivatives w.r.t. C and
/// the kinematic quantities shared by the constitutive terms.
struct InvariantSet {
  double i1 = 0, i2 = 0, i3 = 0;
  double j = 0;       // sqrt(I3)
  double i1_star = 0; // -2 J
  std::optional<double> i4, i5;

  SymTensor3 d_i1, d_i2, d_i3, d_i1_star;
  std::optional<SymTensor3> d_i4, d_i5;

  SymTensor3 c, c_inv, cof_c;

  /// Network input vector, length 4 (iso) or 6 (transiso).
  int size() const { return i4 ? 6 : 4; }
  std::array<double, 6> inputs() const;

  /// dI_k/dC in the same order as inputs().
  const SymTensor3 &input_derivative(int k) const;
};

/// Throws Error(kNonPositiveDeterminant) if det C <= 0.
InvariantSet compute_invariants(const SymTensor3 &c,
                                const MaterialSymmetry &sym);

/// Network inputs at C = 1.
std::array<double, 6> reference_inputs(const MaterialSymmetry &sym);

/// Cubic-discriminant admissibility measure of (I1, I2, I3); non-positive
/// for real eigenvalues.
double admissibility_gamma(double i1, double i2, double i3);

/// Tolerance applied to Gamma. Gamma is homogeneous of degree six in the
/// eigenvalues, so the absolute bound 1e-12 is scaled by (I1/3)^6 for
/// states larger than the identity.
double admissibility_tolerance(double i1);

/// Full predicate: Gamma <= tolerance and I1, I2, I3 > 0.
bool is_admissible(double i1, double i2, double i3);
bool is_admissible(const SymTensor3 &c);

}  // namespace pann
