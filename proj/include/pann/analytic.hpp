//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>

#include "pann/invariants.hpp"
#include "pann/tensor3.hpp"

namespace pann {

/// Maps a right Cauchy-Green tensor to a second Piola-Kirchhoff stress (kPa).
using StressMap = std::function<SymTensor3(const SymTensor3 &)>;
/// Maps a right Cauchy-Green tensor to a strain energy density (kPa).
using EnergyMap = std::function<double(const SymTensor3 &)>;

struct NeoHookeParams {
  double youngs_modulus = 1e3;  // kPa
  double poisson_ratio = 0.3;

  double mu() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }
  double lambda() const {
    return youngs_modulus * poisson_ratio
           / ((1.0 + poisson_ratio) * (1.0 - 2.0 * poisson_ratio));
  }

  /// Throws Error(kInvalidArgument) unless E > 0 and -1 < nu < 0.5.
  void validate() const;
};

/// Parameters of the Schroeder-type transversely isotropic potential. Only
/// positivity of beta and alpha4 >= 1 are checked.
struct TransIsoParams {
  double beta = 2;
  double alpha1 = 8;   // kPa
  double alpha2 = 0;   // kPa
  double delta1 = 10;  // kPa
  double delta2 = 56;  // kPa
  double alpha4 = 2;
  double eta1 = 10;    // kPa

  double eta_star() const;
  /// Constant that makes the energy vanish at C = 1.
  double energy_shift() const {
    return -(3 * alpha1 + 3 * alpha2 + delta1 + 2 * eta1 / alpha4);
  }

  void validate() const;
};

double nh_energy(const InvariantSet &inv, const NeoHookeParams &p);
SymTensor3 nh_stress(const InvariantSet &inv, const NeoHookeParams &p);

/// Requires invariants computed with the structural tensor of p.beta.
double ti_energy(const InvariantSet &inv, const TransIsoParams &p);
SymTensor3 ti_stress(const InvariantSet &inv, const TransIsoParams &p);

class NeoHookeModel {
public:
  explicit NeoHookeModel(NeoHookeParams p = {});

  const NeoHookeParams &params() const { return p_; }
  double energy(const SymTensor3 &c) const;
  SymTensor3 stress(const SymTensor3 &c) const;

  StressMap stress_map() const;
  EnergyMap energy_map() const;

private:
  NeoHookeParams p_;
};

class TransIsoModel {
public:
  explicit TransIsoModel(TransIsoParams p = {});

  const TransIsoParams &params() const { return p_; }
  const MaterialSymmetry &symmetry() const { return sym_; }
  double energy(const SymTensor3 &c) const;
  SymTensor3 stress(const SymTensor3 &c) const;

  StressMap stress_map() const;
  EnergyMap energy_map() const;

private:
  TransIsoParams p_;
  MaterialSymmetry sym_;
};

}  // namespace pann
