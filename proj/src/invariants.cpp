//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "pann/errors.hpp"

namespace pann {

StructuralTensor::StructuralTensor(double beta)
    : beta_(beta), g_(SymTensor3::diagonal(beta * beta, 1.0 / beta, 1.0 / beta)),
      trace_(beta * beta + 2.0 / beta) {
  if (!(beta > 0) || !std::isfinite(beta))
    throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
}

const StructuralTensor &MaterialSymmetry::structural() const {
  if (!structural_)
    throw Error(ErrorCode::kWrongSymmetry,
                "isotropic symmetry has no structural tensor");
  return *structural_;
}

std::array<double, 6> InvariantSet::inputs() const {
  if (i4)
    return { i1, i2, i3, *i4, *i5, i1_star };
  return { i1, i2, i3, i1_star, 0, 0 };
}

const SymTensor3 &InvariantSet::input_derivative(int k) const {
  switch (k) {
  case 0:
    return d_i1;
  case 1:
    return d_i2;
  case 2:
    return d_i3;
  default:
    break;
  }
  if (!i4) {
    if (k == 3)
      return d_i1_star;
  } else {
    if (k == 3)
      return *d_i4;
    if (k == 4)
      return *d_i5;
    if (k == 5)
      return d_i1_star;
  }
  throw Error(ErrorCode::kDimensionMismatch, "invariant index out of range");
}

InvariantSet compute_invariants(const SymTensor3 &c,
                                const MaterialSymmetry &sym) {
  InvariantSet s;
  s.c = c;
  s.i3 = det(c);
  if (!(s.i3 > 0))
    throw Error(ErrorCode::kNonPositiveDeterminant, "det C must be positive");

  s.cof_c = cof(c);
  s.c_inv = s.cof_c * (1.0 / s.i3);
  s.i1 = trace(c);
  s.i2 = trace(s.cof_c);
  s.j = std::sqrt(s.i3);
  s.i1_star = -2.0 * s.j;

  s.d_i1 = SymTensor3::identity();
  s.d_i2 = s.i1 * SymTensor3::identity() - c;
  s.d_i3 = s.cof_c;
  s.d_i1_star = -s.j * s.c_inv;

  if (!sym.is_isotropic()) {
    const SymTensor3 &g = sym.structural().tensor();
    s.i4 = contract(c, g);
    s.i5 = contract(s.cof_c, g);
    s.d_i4 = g;
    s.d_i5 = *s.i5 * s.c_inv - sym_triple_product(s.cof_c, g, s.c_inv);
  }
  return s;
}

std::array<double, 6> reference_inputs(const MaterialSymmetry &sym) {
  if (sym.is_isotropic())
    return { 3, 3, 1, -2, 0, 0 };
  const double tr = sym.structural().trace();
  return { 3, 3, 1, tr, tr, -2 };
}

double admissibility_gamma(double i1, double i2, double i3) {
  return (4 * i1 * i1 * i1 * i3 - i1 * i1 * i2 * i2 + 4 * i2 * i2 * i2
          + 27 * i3 * i3 - 18 * i1 * i2 * i3)
         / 108.0;
}

double admissibility_tolerance(double i1) {
  const double s = std::max(1.0, std::abs(i1) / 3.0);
  const double s3 = s * s * s;
  return 1e-12 * s3 * s3;
}

bool is_admissible(double i1, double i2, double i3) {
  if (!(i1 > 0 && i2 > 0 && i3 > 0))
    return false;
  return admissibility_gamma(i1, i2, i3) <= admissibility_tolerance(i1);
}

bool is_admissible(const SymTensor3 &c) {
  return is_admissible(trace(c), trace(cof(c)), det(c));
}

}  // namespace pann
