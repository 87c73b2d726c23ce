//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "pann/tensor3.hpp"

namespace pann::test {

inline double rel_diff(double a, double b, double floor = 1.0) {
  return std::abs(a - b) / std::max({ std::abs(a), std::abs(b), floor });
}

/// Largest componentwise deviation scaled by the largest component.
inline double rel_diff(const SymTensor3 &a, const SymTensor3 &b,
                       double floor = 1e-12) {
  double num = 0, den = floor;
  for (int k = 0; k < 6; ++k) {
    num = std::max(num, std::abs(a[k] - b[k]));
    den = std::max({ den, std::abs(a[k]), std::abs(b[k]) });
  }
  return num / den;
}

inline Rotation3 random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> n;
  return Rotation3::from_quaternion(n(rng), n(rng), n(rng), n(rng));
}

/// C = Q diag(l^2) Q^T with stretches in [lo, hi].
inline SymTensor3 random_spd(std::mt19937_64 &rng, double lo = 0.6,
                             double hi = 1.6) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double a = u(rng), b = u(rng), c = u(rng);
  return rotate(random_rotation(rng), SymTensor3::diagonal(a * a, b * b, c * c));
}

/// Central difference of f along the symmetric direction of component k.
/// Off-diagonal entries move both (i,j) and (j,i), so the returned value is
/// the derivative with respect to C_ij as an independent tensor entry.
template<class F>
SymTensor3 fd_gradient(F &&f, const SymTensor3 &c, double h_rel = 1e-6) {
  const double h = h_rel * std::max(1.0, frobenius_norm(c));
  SymTensor3 g;
  for (int k = 0; k < 6; ++k) {
    SymTensor3 p = c, m = c;
    p[k] += h;
    m[k] -= h;
    const double d = (f(p) - f(m)) / (2 * h);
    g[k] = k < 3 ? d : 0.5 * d;
  }
  return g;
}

}  // namespace pann::test
