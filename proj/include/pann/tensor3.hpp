//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cmath>

namespace pann {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Symmetric second-order tensor in three dimensions.
///
/// Only the six independent components are stored, in the order
/// (11, 22, 33, 12, 13, 23). This is also the Voigt order used by the
/// tangent representation.
class SymTensor3 {
public:
  constexpr SymTensor3() = default;

  constexpr SymTensor3(double c11, double c22, double c33, double c12,
                       double c13, double c23)
      : v_ { c11, c22, c33, c12, c13, c23 } { }

  static constexpr SymTensor3 identity() { return { 1, 1, 1, 0, 0, 0 }; }

  static constexpr SymTensor3 diagonal(double a, double b, double c) {
    return { a, b, c, 0, 0, 0 };
  }

  /// Symmetric part of a full 3x3 matrix.
  static SymTensor3 symmetric_part(const Matrix3 &m);

  constexpr double operator()(int i, int j) const { return v_[index(i, j)]; }

  constexpr double operator[](int k) const { return v_[k]; }
  constexpr double &operator[](int k) { return v_[k]; }

  constexpr const std::array<double, 6> &components() const { return v_; }

  Matrix3 to_matrix() const;

  SymTensor3 &operator+=(const SymTensor3 &o) {
    for (int k = 0; k < 6; ++k)
      v_[k] += o.v_[k];
    return *this;
  }

  SymTensor3 &operator-=(const SymTensor3 &o) {
    for (int k = 0; k < 6; ++k)
      v_[k] -= o.v_[k];
    return *this;
  }

  SymTensor3 &operator*=(double s) {
    for (double &x: v_)
      x *= s;
    return *this;
  }

  friend SymTensor3 operator+(SymTensor3 a, const SymTensor3 &b) {
    return a += b;
  }
  friend SymTensor3 operator-(SymTensor3 a, const SymTensor3 &b) {
    return a -= b;
  }
  friend SymTensor3 operator*(SymTensor3 a, double s) { return a *= s; }
  friend SymTensor3 operator*(double s, SymTensor3 a) { return a *= s; }
  friend SymTensor3 operator-(SymTensor3 a) { return a *= -1.0; }

  friend bool operator==(const SymTensor3 &, const SymTensor3 &) = default;

  /// Voigt slot of the (i, j) component.
  static constexpr int index(int i, int j) {
    if (i == j)
      return i;
    const int s = i + j;  // 1 -> 12, 2 -> 13, 3 -> 23
    return 2 + s;
  }

private:
  std::array<double, 6> v_ {};
};

/// General (not necessarily symmetric) 3x3 tensor, row-major.
class Tensor3 {
public:
  constexpr Tensor3() = default;
  constexpr explicit Tensor3(const Matrix3 &m): m_(m) { }

  static constexpr Tensor3 identity() {
    return Tensor3(Matrix3 { { { 1, 0, 0 }, { 0, 1, 0 }, { 0, 0, 1 } } });
  }

  static Tensor3 from(const SymTensor3 &s) { return Tensor3(s.to_matrix()); }

  constexpr double operator()(int i, int j) const { return m_[i][j]; }
  constexpr double &operator()(int i, int j) { return m_[i][j]; }

  constexpr const Matrix3 &matrix() const { return m_; }

  Tensor3 transpose() const;

  friend Tensor3 operator*(const Tensor3 &a, const Tensor3 &b);
  friend Tensor3 operator+(const Tensor3 &a, const Tensor3 &b);
  friend Tensor3 operator-(const Tensor3 &a, const Tensor3 &b);
  friend Tensor3 operator*(double s, const Tensor3 &a);

  friend bool operator==(const Tensor3 &, const Tensor3 &) = default;

private:
  Matrix3 m_ {};
};

/// Proper orthogonal tensor. Construction is only possible through the
/// named factories, all of which produce exact rotations up to rounding.
class Rotation3 {
public:
  Rotation3(): r_(Tensor3::identity()) { }

  /// R_x2(phi2) * R_x3(phi3), right-handed and active. R_x2 turns e3
  /// towards e1, R_x3 turns e1 towards e2.
  static Rotation3 about_axes(double phi2, double phi3);

  static Rotation3 about_x1(double phi);
  static Rotation3 about_x2(double phi);
  static Rotation3 about_x3(double phi);

  /// Rotation from a (not necessarily normalized) quaternion (w, x, y, z).
  static Rotation3 from_quaternion(double w, double x, double y, double z);

  const Tensor3 &tensor() const { return r_; }
  double operator()(int i, int j) const { return r_(i, j); }

  Rotation3 operator*(const Rotation3 &o) const {
    return Rotation3(r_ * o.r_);
  }

private:
  explicit Rotation3(const Tensor3 &r): r_(r) { }

  Tensor3 r_;
};

Rotation3 rotation_about_axes(double phi2, double phi3);

double trace(const SymTensor3 &t);
double det(const SymTensor3 &t);
double det(const Tensor3 &t);

/// Cofactor from 2x2 minors; well defined for singular tensors.
SymTensor3 cof(const SymTensor3 &t);

/// Throws Error(kSingularTensor) when |det t| <= 1e-300.
SymTensor3 inverse(const SymTensor3 &t);
Tensor3 inverse(const Tensor3 &t);

/// Full contraction A : B over all nine components.
double contract(const SymTensor3 &a, const SymTensor3 &b);
double contract(const Tensor3 &a, const Tensor3 &b);

double frobenius_norm(const SymTensor3 &t);
double frobenius_norm(const Tensor3 &t);

/// Symmetric product sym(A . B) for symmetric A, B.
SymTensor3 sym_product(const SymTensor3 &a, const SymTensor3 &b);

/// A . B . C with symmetric factors; the result is symmetrized.
SymTensor3 sym_triple_product(const SymTensor3 &a, const SymTensor3 &b,
                              const SymTensor3 &c);

/// Q . T . Q^T
SymTensor3 rotate(const Rotation3 &q, const SymTensor3 &t);

/// F^T . F
SymTensor3 right_cauchy_green(const Tensor3 &f);

/// Unique symmetric positive definite square root (Denman-Beavers).
SymTensor3 spd_sqrt(const SymTensor3 &c);

}  // namespace pann
