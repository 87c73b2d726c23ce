//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/tensor3.hpp"

#include <algorithm>
#include <cmath>

#include "pann/errors.hpp"

namespace pann {

SymTensor3 SymTensor3::symmetric_part(const Matrix3 &m) {
  return { m[0][0],
           m[1][1],
           m[2][2],
           0.5 * (m[0][1] + m[1][0]),
           0.5 * (m[0][2] + m[2][0]),
           0.5 * (m[1][2] + m[2][1]) };
}

Matrix3 SymTensor3::to_matrix() const {
  return { { { v_[0], v_[3], v_[4] },
             { v_[3], v_[1], v_[5] },
             { v_[4], v_[5], v_[2] } } };
}

Tensor3 Tensor3::transpose() const {
  Tensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.m_[i][j] = m_[j][i];
  return t;
}

Tensor3 operator*(const Tensor3 &a, const Tensor3 &b) {
  Tensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k)
        s += a.m_[i][k] * b.m_[k][j];
      c.m_[i][j] = s;
    }
  return c;
}

Tensor3 operator+(const Tensor3 &a, const Tensor3 &b) {
  Tensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c.m_[i][j] = a.m_[i][j] + b.m_[i][j];
  return c;
}

Tensor3 operator-(const Tensor3 &a, const Tensor3 &b) {
  Tensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c.m_[i][j] = a.m_[i][j] - b.m_[i][j];
  return c;
}

Tensor3 operator*(double s, const Tensor3 &a) {
  Tensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      c.m_[i][j] = s * a.m_[i][j];
  return c;
}

Rotation3 Rotation3::about_x1(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return Rotation3(Tensor3(Matrix3 { { { 1, 0, 0 }, { 0, c, -s }, { 0, s, c } } }));
}

Rotation3 Rotation3::about_x2(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return Rotation3(Tensor3(Matrix3 { { { c, 0, s }, { 0, 1, 0 }, { -s, 0, c } } }));
}

Rotation3 Rotation3::about_x3(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return Rotation3(Tensor3(Matrix3 { { { c, -s, 0 }, { s, c, 0 }, { 0, 0, 1 } } }));
}

Rotation3 Rotation3::about_axes(double phi2, double phi3) {
  return about_x2(phi2) * about_x3(phi3);
}

Rotation3 Rotation3::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0))
    return Rotation3();
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  return Rotation3(Tensor3(Matrix3 {
      { { 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y) },
        { 2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x) },
        { 2 * (x * z - w * y), 2 * (y * z + w * x),
          1 - 2 * (x * x + y * y) } } }));
}

Rotation3 rotation_about_axes(double phi2, double phi3) {
  return Rotation3::about_axes(phi2, phi3);
}

double trace(const SymTensor3 &t) {
  return t[0] + t[1] + t[2];
}

double det(const SymTensor3 &t) {
  const double a = t[0], b = t[1], c = t[2];
  const double d = t[3], e = t[4], f = t[5];
  return a * (b * c - f * f) - d * (d * c - f * e) + e * (d * f - b * e);
}

double det(const Tensor3 &t) {
  return t(0, 0) * (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1))
         - t(0, 1) * (t(1, 0) * t(2, 2) - t(1, 2) * t(2, 0))
         + t(0, 2) * (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0));
}

SymTensor3 cof(const SymTensor3 &t) {
  const double a = t[0], b = t[1], c = t[2];
  const double d = t[3], e = t[4], f = t[5];
  return { b * c - f * f, a * c - e * e, a * b - d * d,
           e * f - c * d, d * f - b * e, d * e - a * f };
}

SymTensor3 inverse(const SymTensor3 &t) {
  const double d = det(t);
  if (!(std::abs(d) > 1e-300))
    throw Error(ErrorCode::kSingularTensor, "determinant is zero");
  return cof(t) * (1.0 / d);
}

Tensor3 inverse(const Tensor3 &t) {
  const double d = det(t);
  if (!(std::abs(d) > 1e-300))
    throw Error(ErrorCode::kSingularTensor, "determinant is zero");
  Tensor3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // adjugate: transpose of the cofactor matrix
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
      const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r(i, j) = (t(i1, j1) * t(i2, j2) - t(i1, j2) * t(i2, j1)) / d;
    }
  return r;
}

double contract(const SymTensor3 &a, const SymTensor3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
         + 2.0 * (a[3] * b[3] + a[4] * b[4] + a[5] * b[5]);
}

double contract(const Tensor3 &a, const Tensor3 &b) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += a(i, j) * b(i, j);
  return s;
}

double frobenius_norm(const SymTensor3 &t) {
  return std::sqrt(contract(t, t));
}

double frobenius_norm(const Tensor3 &t) {
  return std::sqrt(contract(t, t));
}

SymTensor3 sym_product(const SymTensor3 &a, const SymTensor3 &b) {
  const Tensor3 p = Tensor3::from(a) * Tensor3::from(b);
  return SymTensor3::symmetric_part(p.matrix());
}

SymTensor3 sym_triple_product(const SymTensor3 &a, const SymTensor3 &b,
                              const SymTensor3 &c) {
  const Tensor3 p = Tensor3::from(a) * Tensor3::from(b) * Tensor3::from(c);
  return SymTensor3::symmetric_part(p.matrix());
}

SymTensor3 rotate(const Rotation3 &q, const SymTensor3 &t) {
  const Tensor3 &r = q.tensor();
  const Tensor3 p = r * Tensor3::from(t) * r.transpose();
  return SymTensor3::symmetric_part(p.matrix());
}

SymTensor3 right_cauchy_green(const Tensor3 &f) {
  return SymTensor3::symmetric_part((f.transpose() * f).matrix());
}

SymTensor3 spd_sqrt(const SymTensor3 &c) {
  if (!(det(c) > 0))
    throw Error(ErrorCode::kNonPositiveDeterminant,
                "square root requires a positive definite tensor");

  // Scaled Denman-Beavers iteration. Y and Z commute with C, so both stay
  // symmetric; the determinant scaling keeps convergence fast for stretched
  // inputs.
  SymTensor3 y = c, z = SymTensor3::identity();
  for (int it = 0; it < 100; ++it) {
    const double g =
        std::pow(std::abs(det(y) * det(z)), -1.0 / 6.0);
    const double gs = (it < 8 && std::isfinite(g)) ? g : 1.0;
    const SymTensor3 yi = inverse(y), zi = inverse(z);
    const SymTensor3 yn = 0.5 * (gs * y + (1.0 / gs) * zi);
    const SymTensor3 zn = 0.5 * (gs * z + (1.0 / gs) * yi);
    double diff = 0, scale = 0;
    for (int k = 0; k < 6; ++k) {
      diff = std::max(diff, std::abs(yn[k] - y[k]));
      scale = std::max(scale, std::abs(yn[k]));
    }
    y = yn;
    z = zn;
    if (diff <= 1e-15 * scale)
      break;
  }
  return y;
}

}  // namespace pann
