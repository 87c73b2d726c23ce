//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <filesystem>
#include <vector>

#include "json.hpp"
#include "pann/invariants.hpp"
#include "pann/tensor3.hpp"

namespace pann {

/// One strain-stress tuple. T is in kPa.
struct DataPoint {
  SymTensor3 c;
  SymTensor3 t;
};

/// Ordered tuples plus free-form provenance. The metadata object always
/// carries "units" and a "perturbations" array.
struct Dataset {
  std::vector<DataPoint> points;
  nlohmann::json metadata = default_metadata();

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  static nlohmann::json default_metadata() {
    return { { "units", { { "C", "1" }, { "T", "kPa" } } },
             { "perturbations", nlohmann::json::array() } };
  }
};

struct SplitDataset {
  Dataset calibration;
  Dataset test;
  std::uint64_t seed = 0;
};

/// Rotated-stretch sampling: F = S(gamma) diag(l) R with log-uniform
/// stretches, a uniform random rotation R and a simple shear S of amount
/// gamma along e1 (x) e2. C = F^T F. The stress comes from `model`.
struct MultiaxialSpec {
  std::size_t count = 963;
  double stretch_lo = 0.7, stretch_hi = 1.6;
  double shear_lo = 0.0, shear_hi = 0.5;
};

Dataset sample_multiaxial(const std::function<SymTensor3(const SymTensor3 &)> &model,
                          const MultiaxialSpec &spec, std::uint64_t seed);

/// Greedy pass in insertion order: a tuple is kept iff, against every tuple
/// kept so far, at least one invariant differs by more than
/// eta * max(|a|, |b|). Uses (I1, I2, I3) or, for transverse isotropy,
/// (I1, ..., I5). Idempotent.
Dataset filter_by_invariants(const Dataset &data, double eta,
                             const MaterialSymmetry &sym);

/// Seeded permutation; the first ceil(fraction * n) tuples calibrate.
/// Throws Error(kDatasetTooSmall) for n < 2, Error(kInvalidArgument) for a
/// fraction outside (0, 1).
SplitDataset split(const Dataset &data, double fraction, std::uint64_t seed);

/// CSV with header C11,C22,C33,C12,C13,C23,T11,T22,T33,T12,T13,T23 and a
/// metadata sidecar at <path>.json.
void write_csv(const Dataset &data, const std::filesystem::path &path);
/// Throws Error(kIoError) or Error(kFormatError).
Dataset read_csv(const std::filesystem::path &path);

/// Serialized CSV text, exactly as write_csv would produce it.
std::string to_csv(const Dataset &data);

extern const char *const kCsvHeader;

}  // namespace pann
