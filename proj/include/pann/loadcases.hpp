//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pann/analytic.hpp"
#include "pann/dataset.hpp"

namespace pann {

enum class LoadKind {
  kUniaxial,  // C = diag(l1^2, l2^2, l2^2), T22 = T33 = 0
  kBiaxial,   // C = diag(l1^2, l1^2, l2^2), T33 = 0
  kShear,     // C = [[1, g, 0], [g, g^2 + 1, 0], [0, 0, 1]]
};

std::string_view to_string(LoadKind k);
LoadKind parse_load_kind(std::string_view s);

struct LoadPath {
  LoadKind kind = LoadKind::kUniaxial;
  double lo = 0.8, hi = 2.0;
  int count = 30;
  /// For stretch paths spanning 1: emit the identity tuple twice, once per
  /// branch.
  bool duplicate_identity = true;
};

struct LoadPoint {
  double control = 1;          // l1 or gamma
  double lateral_stretch = 1;  // solved l2; 1 for shear
  SymTensor3 c;
  SymTensor3 t;
  double newton_residual = 0;  // kPa
  int iterations = 0;
};

/// Solves T22(l1, l2) = 0 for l2 by Newton with a bisection safeguard on
/// [0.2, 5]. Throws Error(kNewtonDivergence) when the bracket has no sign
/// change or the residual bound 1e-10 max(1, |T11|) is not met.
LoadPoint solve_uniaxial(const StressMap &model, double l1,
                         std::optional<double> guess = std::nullopt);
/// Same for T33 = 0 under equibiaxial stretch l1.
LoadPoint solve_biaxial(const StressMap &model, double l1,
                        std::optional<double> guess = std::nullopt);
LoadPoint shear_point(const StressMap &model, double gamma);

/// Control values along the path. Stretch paths that span 1 are split into
/// a compression and a tension branch, sized in proportion to their length,
/// each ending at 1.
std::vector<double> control_grid(const LoadPath &path);

/// Solves the path with continuation from the previous point.
std::vector<LoadPoint> run_path(const StressMap &model, const LoadPath &path);

Dataset path_dataset(const StressMap &model, const LoadPath &path,
                     const nlohmann::json &source = nlohmann::json::object());

/// T11 += offset on every tuple.
Dataset apply_offset(Dataset data, double offset);
/// T11 += N(0, sigma^2), seeded.
Dataset apply_noise(Dataset data, double sigma, std::uint64_t seed);

}  // namespace pann
