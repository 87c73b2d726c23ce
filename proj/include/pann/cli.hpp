//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pann/analytic.hpp"
#include "pann/calibrate.hpp"
#include "pann/dataset.hpp"
#include "pann/errors.hpp"
#include "pann/loadcases.hpp"
#include "pann/pann_model.hpp"

namespace pann::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitCalibration = 4,
  kExitViolation = 5,
};

/// Maps a library error onto the process exit code.
int exit_code_for(ErrorCode code);

enum class ReferenceKind { kNeoHooke, kTransIso };

struct ReferenceModel {
  ReferenceKind kind = ReferenceKind::kNeoHooke;
  NeoHookeParams neo_hooke;
  TransIsoParams transiso;

  StressMap stress_map() const;
};

enum class DataSource { kPaths, kMultiaxial };

struct DataSpec {
  DataSource source = DataSource::kPaths;
  std::vector<LoadPath> paths { LoadPath {} };
  MultiaxialSpec multiaxial;
  std::optional<double> filter_eta;
  double offset = 0;       // kPa, added to T11
  double noise_sigma = 0;  // kPa, on T11
};

struct VerifySettings {
  double lambda_lo = 0.1, lambda_hi = 10;
  int volumetric_points = 1000;
  int fallback_per_axis = 40;
  std::size_t transiso_samples = 200000;
  std::size_t audit_states = 100;
  double audit_tolerance = 1e-4;
};

struct SweepSettings {
  int runs = 20;
  double calibration_fraction = 0.7;
  std::vector<ModelVariant> variants { ModelVariant::kBasic,
                                       ModelVariant::kPolyconvex,
                                       ModelVariant::kPolyconvexGrowth,
                                       ModelVariant::kPann };
};

/// Everything a run depends on. The global seed drives every random
/// choice: sampling, noise (seed + 1), splits, restarts and scans.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  MaterialSymmetry symmetry = MaterialSymmetry::isotropic();
  ModelVariant variant = ModelVariant::kPann;
  NetworkArchitecture architecture { 4, { 4 }, true };
  int simple_fp_nodes = 4;
  ReferenceModel reference;
  DataSpec data;
  /// Fraction of tuples used for calibration; 1 keeps all of them.
  double split_fraction = 1.0;
  CalibrationConfig calibration;
  std::vector<LoadPath> evaluate_paths;
  VerifySettings verify;
  SweepSettings sweep;
  /// Worker cap; not part of the echo since results do not depend on it.
  int threads = 1;

  /// Pushes the global seed and thread cap into the calibration settings and
  /// fixes the architecture input size. Throws Error(kConfigError).
  void resolve();
};

/// Throws Error(kConfigError) on unknown keys or invalid values.
ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const ExperimentConfig &c);
/// Throws Error(kIoError) or Error(kConfigError).
ExperimentConfig load_config(const std::filesystem::path &path);

/// Common header of every artifact: library version and config echo.
nlohmann::json artifact_header(const ExperimentConfig &c);

std::string version();

/// Builds the dataset described by config.data.
Dataset build_dataset(const ExperimentConfig &config);

struct CommandOutput {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;
  std::string summary;  // one line for the terminal
};

/// Writes <out>/data.csv and its sidecar.
CommandOutput cmd_gen_data(const ExperimentConfig &config,
                           const std::filesystem::path &out);

/// Writes <out>/model.json and <out>/calibration_report.json.
CommandOutput cmd_calibrate(const ExperimentConfig &config,
                            const std::filesystem::path &data_path,
                            const std::filesystem::path &out);

/// Writes one curve CSV per configured evaluation path plus
/// <out>/evaluation_report.json with MSE and epsilon on the dataset when one
/// is given.
CommandOutput cmd_evaluate(const ExperimentConfig &config,
                           const std::filesystem::path &model_path,
                           const std::optional<std::filesystem::path> &data_path,
                           const std::filesystem::path &out);

/// Non-negativity scan plus gradient audit into <out>/verify_report.json.
/// Exit code 5 iff a scan violation is found or the audit exceeds its
/// tolerance.
CommandOutput cmd_verify(const ExperimentConfig &config,
                         const std::filesystem::path &model_path,
                         const std::filesystem::path &out);

/// Variant ladder study on the configured (or given) dataset. Writes
/// <out>/epsilon_<variant>.csv per variant and <out>/sweep_summary.json.
CommandOutput cmd_sweep(const ExperimentConfig &config,
                        const std::optional<std::filesystem::path> &data_path,
                        const std::filesystem::path &out);

}  // namespace pann::cli
