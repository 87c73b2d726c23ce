//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <span>
#include <string>

#include "json.hpp"
#include "pann/analytic.hpp"
#include "pann/icnn.hpp"
#include "pann/invariants.hpp"
#include "pann/tensor3.hpp"

namespace pann {

/// Model ladder. Each rung adds conditions to the previous one:
///   kBasic             unconstrained network on invariants
///   kPolyconvex        non-negative weights
///   kPolyconvexGrowth  + volumetric growth term
///   kPann              + stress and energy normalization
/// kSimpleFP is the unconstrained F -> P baseline (see SimpleFPModel).
enum class ModelVariant {
  kBasic,
  kPolyconvex,
  kPolyconvexGrowth,
  kPann,
  kSimpleFP,
};

std::string_view to_string(ModelVariant v);
/// Accepts "basic", "polyconvex", "polyconvex_growth", "pann", "simple_fp"
/// and the roman numerals "i" to "iv".
ModelVariant parse_variant(std::string_view s);
/// Whether the variant requires non-negative network weights.
bool variant_constrained(ModelVariant v);
bool variant_has_growth(ModelVariant v);
bool variant_normalized(ModelVariant v);

/// (J + 1/J - 2)^2 with an implicit modulus of 1 kPa.
double growth_energy(double j);
SymTensor3 growth_stress(double j, const SymTensor3 &c_inv);

/// Stress normalization constants, all in kPa. Isotropic models only use n;
/// transversely isotropic ones use o, p, q (x is kept for auditing).
struct NormalizationConstants {
  double n = 0;
  double o = 0, p = 0, q = 0, x = 0;
};

/// Constants from the network gradient at C = 1 (inputs ordered as in
/// InvariantSet::inputs()).
NormalizationConstants
normalization_from_gradient(const MaterialSymmetry &sym,
                            std::span<const double> grad_at_identity);

double iso_normalization_constant(const NetworkParams &net);
NormalizationConstants
transiso_normalization_constants(const NetworkParams &net,
                                 const StructuralTensor &g);

/// Symmetric 6x6 representation (Voigt order 11, 22, 33, 12, 13, 23) of the
/// fourth-order tangent 2 dT/dC.
using Tangent6 = std::array<std::array<double, 6>, 6>;

/// Central differences of a stress map, step 1e-6 max(1, |C|).
Tangent6 finite_difference_tangent(const StressMap &stress,
                                   const SymTensor3 &c);

class PannModel {
public:
  /// Throws Error(kInvalidArgument) if the network does not fit the symmetry
  /// or the variant's weight constraint, or if variant is kSimpleFP.
  PannModel(ModelVariant variant, MaterialSymmetry sym, NetworkParams net);

  ModelVariant variant() const { return variant_; }
  const MaterialSymmetry &symmetry() const { return sym_; }
  const NetworkParams &network() const { return net_; }
  const NormalizationConstants &constants() const { return constants_; }
  double energy_shift() const { return energy_shift_; }

  double energy(const SymTensor3 &c) const;
  SymTensor3 stress(const SymTensor3 &c) const;
  Tangent6 tangent(const SymTensor3 &c) const;

  /// d psi / d inputs including the normalization terms that act on
  /// invariants (I4, I5, I1*); growth enters through J and is excluded.
  std::array<double, 6> invariant_gradient(const SymTensor3 &c) const;

  StressMap stress_map() const;
  EnergyMap energy_map() const;

private:
  double energy(const InvariantSet &inv) const;

  ModelVariant variant_;
  MaterialSymmetry sym_;
  NetworkParams net_;
  NormalizationConstants constants_;
  double energy_shift_ = 0;
};

void to_json(nlohmann::json &j, const PannModel &m);
/// Recomputes the constants and checks them against the stored values
/// (tolerance 1e-12 relative); throws Error(kFormatError) on mismatch.
PannModel pann_model_from_json(const nlohmann::json &j);

void to_json(nlohmann::json &j, const MaterialSymmetry &s);
MaterialSymmetry symmetry_from_json(const nlohmann::json &j);

/// P_kL = B_kL + sum_a W_akL SP(w_a : F + b_a). No physics is built in.
class SimpleFPModel {
public:
  static constexpr int kComponents = 9;

  SimpleFPModel() = default;
  /// Zero-initialized model with the given number of hidden nodes.
  explicit SimpleFPModel(int nodes);
  SimpleFPModel(int nodes, std::vector<double> theta);

  static std::size_t parameter_count(int nodes) {
    return static_cast<std::size_t>(nodes) * (2 * kComponents + 1)
           + kComponents;
  }

  int nodes() const { return nodes_; }
  std::span<const double> flat() const { return theta_; }
  std::span<double> flat() { return theta_; }

  /// Layout: w (nodes x 9, row-major over F components), b (nodes),
  /// W (nodes x 9), B (9).
  std::size_t w_offset() const { return 0; }
  std::size_t b_offset() const { return nodes_ * kComponents; }
  std::size_t out_offset() const { return b_offset() + nodes_; }
  std::size_t bias_out_offset() const {
    return out_offset() + nodes_ * kComponents;
  }

  Tensor3 first_pk(const Tensor3 &f) const;
  /// F^-1 P with F = sqrt(C). Not symmetric in general.
  Tensor3 second_pk(const SymTensor3 &c) const;

private:
  int nodes_ = 0;
  std::vector<double> theta_;
};

Tensor3 simple_fp_stress(const SimpleFPModel &model, const Tensor3 &f);
SimpleFPModel initialize_simple_fp(int nodes, std::uint64_t seed);

void to_json(nlohmann::json &j, const SimpleFPModel &m);
void from_json(const nlohmann::json &j, SimpleFPModel &m);

}  // namespace pann
