//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>

namespace pann::kernels {

struct Activation {
  double sp;     // softplus
  double sig;    // logistic, d sp / dx
  double dsig;   // d sig / dx
};

inline Activation activate(double x) {
  const double e = std::exp(-std::abs(x));
  const double inv = 1.0 / (1.0 + e);
  Activation a;
  a.sp = std::max(x, 0.0) + std::log1p(e);
  a.sig = x >= 0 ? inv : e * inv;
  a.dsig = e * inv * inv;
  return a;
}

}  // namespace pann::kernels
