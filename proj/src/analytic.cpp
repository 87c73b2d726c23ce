//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/analytic.hpp"

#include <cmath>

#include "pann/errors.hpp"

namespace pann {

void NeoHookeParams::validate() const {
  if (!(youngs_modulus > 0))
    throw Error(ErrorCode::kInvalidArgument, "E must be positive");
  if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5))
    throw Error(ErrorCode::kInvalidArgument, "nu must lie in (-1, 0.5)");
}

double TransIsoParams::eta_star() const {
  const double tr = beta * beta + 2.0 / beta;
  return eta1 / (alpha4 * std::pow(tr, alpha4));
}

void TransIsoParams::validate() const {
  if (!(beta > 0))
    throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
  if (!(alpha4 >= 1))
    throw Error(ErrorCode::kInvalidArgument, "alpha4 must be at least 1");
}

double nh_energy(const InvariantSet &inv, const NeoHookeParams &p) {
  if (!(inv.i3 > 0))
    throw Error(ErrorCode::kNonPositiveDeterminant, "I3 must be positive");
  const double ln_i3 = std::log(inv.i3);
  return 0.5
         * (p.mu() * (inv.i1 - ln_i3 - 3.0)
            + 0.5 * p.lambda() * (inv.i3 - ln_i3 - 1.0));
}

SymTensor3 nh_stress(const InvariantSet &inv, const NeoHookeParams &p) {
  if (!(inv.i3 > 0))
    throw Error(ErrorCode::kNonPositiveDeterminant, "I3 must be positive");
  const double mu = p.mu(), lam = p.lambda();
  return mu * SymTensor3::identity()
         + (0.5 * lam - (2.0 * mu + lam) / (2.0 * inv.i3)) * inv.cof_c;
}

namespace {
  void check_ti(const InvariantSet &inv) {
    if (!(inv.i3 > 0))
      throw Error(ErrorCode::kNonPositiveDeterminant, "I3 must be positive");
    if (!inv.i4 || !inv.i5)
      throw Error(ErrorCode::kWrongSymmetry,
                  "transversely isotropic invariants required");
    if (!(*inv.i4 > 0 && *inv.i5 > 0))
      throw Error(ErrorCode::kNonPositiveAnisotropicInvariant,
                  "I4 and I5 must be positive");
  }
}  // namespace

double ti_energy(const InvariantSet &inv, const TransIsoParams &p) {
  check_ti(inv);
  const double es = p.eta_star();
  return p.alpha1 * inv.i1 + p.alpha2 * inv.i2 + p.delta1 * inv.i3
         - p.delta2 * 0.5 * std::log(inv.i3)
         + es * (std::pow(*inv.i4, p.alpha4) + std::pow(*inv.i5, p.alpha4))
         + p.energy_shift();
}

SymTensor3 ti_stress(const InvariantSet &inv, const TransIsoParams &p) {
  check_ti(inv);
  const double es = p.eta_star();
  SymTensor3 t = p.alpha1 * SymTensor3::identity() + p.alpha2 * inv.d_i2
                 + (p.delta1 * inv.i3 - 0.5 * p.delta2) * inv.c_inv
                 + p.alpha4 * es * std::pow(*inv.i4, p.alpha4 - 1) * *inv.d_i4
                 + p.alpha4 * es * std::pow(*inv.i5, p.alpha4 - 1) * *inv.d_i5;
  return 2.0 * t;
}

NeoHookeModel::NeoHookeModel(NeoHookeParams p): p_(p) {
  p_.validate();
}

double NeoHookeModel::energy(const SymTensor3 &c) const {
  return nh_energy(compute_invariants(c, MaterialSymmetry::isotropic()), p_);
}

SymTensor3 NeoHookeModel::stress(const SymTensor3 &c) const {
  return nh_stress(compute_invariants(c, MaterialSymmetry::isotropic()), p_);
}

StressMap NeoHookeModel::stress_map() const {
  return [m = *this](const SymTensor3 &c) { return m.stress(c); };
}

EnergyMap NeoHookeModel::energy_map() const {
  return [m = *this](const SymTensor3 &c) { return m.energy(c); };
}

TransIsoModel::TransIsoModel(TransIsoParams p)
    : p_(p), sym_(MaterialSymmetry::transversely_isotropic(p.beta)) {
  p_.validate();
}

double TransIsoModel::energy(const SymTensor3 &c) const {
  return ti_energy(compute_invariants(c, sym_), p_);
}

SymTensor3 TransIsoModel::stress(const SymTensor3 &c) const {
  return ti_stress(compute_invariants(c, sym_), p_);
}

StressMap TransIsoModel::stress_map() const {
  return [m = *this](const SymTensor3 &c) { return m.stress(c); };
}

EnergyMap TransIsoModel::energy_map() const {
  return [m = *this](const SymTensor3 &c) { return m.energy(c); };
}

}  // namespace pann
