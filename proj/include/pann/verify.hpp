//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pann/analytic.hpp"
#include "pann/calibrate.hpp"
#include "pann/dataset.hpp"
#include "pann/pann_model.hpp"

namespace pann {

/// Order statistics of a sample of relative errors. Percentiles use linear
/// interpolation between order statistics.
struct ErrorStats {
  std::vector<double> values;  // in input order
  double median = 0;
  double p25 = 0, p75 = 0;
  double p1 = 0, p99 = 0;
};

/// Throws Error(kInvalidArgument) for an empty sample or a negative or
/// non-finite value.
ErrorStats error_stats(std::vector<double> values);
/// Linearly interpolated percentile of ascending-sorted data, q in [0, 100].
double percentile(const std::vector<double> &sorted, double q);

void to_json(nlohmann::json &j, const ErrorStats &s);

/// max_i |T_i - T(C_i)| / max_i |T_i|. Throws Error(kEmptyDataset) or
/// Error(kAllZeroStress).
double relative_error(const StressMap &model, const Dataset &data);
double relative_error(const PannModel &model, const Dataset &data);

/// One CSV line per value under the header "epsilon".
std::string epsilon_csv(const std::vector<double> &values);

/// Sufficient condition for the volumetric-only scan of an isotropic model:
/// d psi / d I1 > 0 and d psi / d I2 > 0 on all admissible states.
struct HypothesisCheck {
  bool holds = false;
  /// For constrained networks the sign follows from the weights; anything
  /// else is reported as not holding.
  std::string reason;
  double min_d_i1 = 0, min_d_i2 = 0;  // sampled on the scan states
};

HypothesisCheck check_iso_hypothesis(const PannModel &model, double lambda_lo,
                                     double lambda_hi, int count);

struct NonNegReport {
  std::string sweep;
  double min_energy = 0;  // kPa
  SymTensor3 argmin;
  std::vector<double> argmin_parameters;  // stretches, then angles
  std::size_t violations = 0;             // psi < -1e-10 kPa
  std::size_t samples = 0;
  std::optional<HypothesisCheck> hypothesis;
};

void to_json(nlohmann::json &j, const NonNegReport &r);

constexpr double kEnergyViolation = -1e-10;  // kPa

/// psi(lambda^2 1) on a log-spaced grid plus lambda = 1; no hypothesis
/// check.
NonNegReport volumetric_scan(const EnergyMap &energy, double lambda_lo = 0.1,
                             double lambda_hi = 10, int count = 1000);

/// psi(diag(l1^2, l2^2, l3^2)) on a log-spaced grid of per_axis^3 points.
NonNegReport stretch_sweep(const EnergyMap &energy, double lambda_lo = 0.1,
                           double lambda_hi = 10, int per_axis = 40);

/// Checks the hypothesis, then scans volumetric states; when the hypothesis
/// does not hold the three-stretch sweep runs instead. Throws
/// Error(kWrongSymmetry) for a transversely isotropic model.
NonNegReport nonneg_scan_iso(const PannModel &model, double lambda_lo = 0.1,
                             double lambda_hi = 10, int count = 1000,
                             int fallback_per_axis = 40);

struct TransIsoScanOptions {
  double lambda_lo = 0.1, lambda_hi = 10;
  double phi_lo = 0, phi_hi = 1.5707963267948966;
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
  /// Replace the quasi-random points by a full grid of grid_points^5.
  bool dense_grid = false;
  int grid_points = 10;
};

/// psi(R diag(l^2) R^T) with R = R_x2(phi2) R_x3(phi3), stretches
/// log-uniform. Points come from a randomly shifted Halton sequence; the
/// identity is always included.
NonNegReport nonneg_scan_transiso(const EnergyMap &energy,
                                  const TransIsoScanOptions &options = {});

struct GradientAudit {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  double max_relative_deviation = 0;
  SymTensor3 worst_state;
};

void to_json(nlohmann::json &j, const GradientAudit &a);

/// Compares stress to 2 d psi / d C by central differences on random
/// admissible states (rotated stretches in [0.7, 1.5]).
GradientAudit gradient_audit(const EnergyMap &energy, const StressMap &stress,
                             std::size_t count = 100, std::uint64_t seed = 0);

/// Random admissible states as used by gradient_audit.
std::vector<SymTensor3> random_admissible_states(std::size_t count,
                                                 std::uint64_t seed);

struct LadderConfig {
  int runs = 20;
  double calibration_fraction = 0.7;
  std::uint64_t seed = 0;
  NetworkArchitecture architecture;
  CalibrationConfig calibration;
  std::vector<ModelVariant> variants { ModelVariant::kBasic,
                                       ModelVariant::kPolyconvex,
                                       ModelVariant::kPolyconvexGrowth,
                                       ModelVariant::kPann };
};

struct LadderEntry {
  ModelVariant variant;
  ErrorStats stats;
  std::vector<double> train_mse;
};

struct LadderResult {
  std::vector<LadderEntry> entries;
  std::size_t calibration_size = 0, test_size = 0;
};

void to_json(nlohmann::json &j, const LadderResult &r);

/// Splits the data once, calibrates every variant `runs` times and records
/// epsilon on the full dataset. Run r uses calibration seed
/// seed + r * restarts. Calibration errors are rethrown with the variant
/// and run in the message.
LadderResult variant_ladder_study(const MaterialSymmetry &sym,
                                  const Dataset &data,
                                  const LadderConfig &config);

}  // namespace pann
