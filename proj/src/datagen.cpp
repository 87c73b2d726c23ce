//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "pann/dataset.hpp"
#include "pann/errors.hpp"

namespace pann {

const char *const kCsvHeader = "C11,C22,C33,C12,C13,C23,T11,T22,T33,T12,T13,T23";

Dataset sample_multiaxial(const std::function<SymTensor3(const SymTensor3 &)> &model,
                          const MultiaxialSpec &spec, std::uint64_t seed) {
  if (spec.count < 1)
    throw Error(ErrorCode::kInvalidArgument, "sample count must be >= 1");
  if (!(spec.stretch_lo > 0 && spec.stretch_hi >= spec.stretch_lo))
    throw Error(ErrorCode::kInvalidArgument, "invalid stretch range");
  if (!(spec.shear_lo >= 0 && spec.shear_hi >= spec.shear_lo))
    throw Error(ErrorCode::kInvalidArgument, "invalid shear range");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_stretch(std::log(spec.stretch_lo),
                                                     std::log(spec.stretch_hi));
  std::uniform_real_distribution<double> shear(spec.shear_lo, spec.shear_hi);
  std::normal_distribution<double> normal;

  Dataset d;
  while (d.points.size() < spec.count) {
    Tensor3 stretch;
    for (int i = 0; i < 3; ++i)
      stretch(i, i) = std::exp(log_stretch(rng));
    Tensor3 s = Tensor3::identity();
    s(0, 1) = shear(rng);
    const double qw = normal(rng), qx = normal(rng), qy = normal(rng),
                 qz = normal(rng);
    const Tensor3 r = Rotation3::from_quaternion(qw, qx, qy, qz).tensor();
    const SymTensor3 c = right_cauchy_green(s * stretch * r);
    if (!is_admissible(c))
      continue;
    d.points.push_back({ c, model(c) });
  }
  d.metadata["load"] = {
    { "kind", "multiaxial" },
    { "count", spec.count },
    { "stretch_range", { spec.stretch_lo, spec.stretch_hi } },
    { "shear_range", { spec.shear_lo, spec.shear_hi } },
    { "seed", seed },
    { "note", "rotated-stretch sampling stands in for finite-element data" },
  };
  return d;
}

Dataset filter_by_invariants(const Dataset &data, double eta,
                             const MaterialSymmetry &sym) {
  if (!(eta > 0 && eta < 1))
    throw Error(ErrorCode::kInvalidArgument, "filter tolerance must be in (0, 1)");
  const int m = sym.is_isotropic() ? 3 : 5;
  std::vector<std::array<double, 6>> kept_inv;
  Dataset out;
  out.metadata = data.metadata;
  for (const DataPoint &p: data.points) {
    const auto inv = compute_invariants(p.c, sym).inputs();
    const bool distinct = std::all_of(
        kept_inv.begin(), kept_inv.end(), [&](const std::array<double, 6> &k) {
          for (int a = 0; a < m; ++a)
            if (std::abs(inv[a] - k[a])
                > eta * std::max(std::abs(inv[a]), std::abs(k[a])))
              return true;
          return false;
        });
    if (distinct) {
      kept_inv.push_back(inv);
      out.points.push_back(p);
    }
  }
  out.metadata["filter"] = { { "eta", eta },
                             { "input_count", data.size() },
                             { "kept", out.size() } };
  return out;
}

SplitDataset split(const Dataset &data, double fraction, std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n < 2)
    throw Error(ErrorCode::kDatasetTooSmall, "splitting needs at least 2 tuples");
  if (!(fraction > 0 && fraction < 1))
    throw Error(ErrorCode::kInvalidArgument, "split fraction must be in (0, 1)");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  auto n_cal = static_cast<std::size_t>(std::ceil(fraction * n - 1e-9));
  n_cal = std::clamp<std::size_t>(n_cal, 1, n - 1);

  SplitDataset s;
  s.seed = seed;
  s.calibration.metadata = data.metadata;
  s.test.metadata = data.metadata;
  for (std::size_t k = 0; k < n; ++k)
    (k < n_cal ? s.calibration : s.test).points.push_back(data.points[idx[k]]);
  const nlohmann::json info = { { "fraction", fraction }, { "seed", seed } };
  s.calibration.metadata["split"] = info;
  s.calibration.metadata["split"]["part"] = "calibration";
  s.test.metadata["split"] = info;
  s.test.metadata["split"]["part"] = "test";
  return s;
}

std::string to_csv(const Dataset &data) {
  std::string out = kCsvHeader;
  out += '\n';
  char buf[32];
  for (const DataPoint &p: data.points) {
    for (int k = 0; k < 12; ++k) {
      const double v = k < 6 ? p.c[k] : p.t[k - 6];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      out += k == 11 ? '\n' : ',';
    }
  }
  return out;
}

void write_csv(const Dataset &data, const std::filesystem::path &path) {
  const auto write = [](const std::filesystem::path &p, const std::string &s) {
    std::ofstream f(p, std::ios::binary);
    if (!f)
      throw Error(ErrorCode::kIoError, "cannot open " + p.string() + " for writing");
    f << s;
    if (!f)
      throw Error(ErrorCode::kIoError, "write to " + p.string() + " failed");
  };
  write(path, to_csv(data));
  write(path.string() + ".json", data.metadata.dump(2) + "\n");
}

Dataset read_csv(const std::filesystem::path &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line))
    throw Error(ErrorCode::kFormatError, path.string() + ": missing header");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != kCsvHeader)
    throw Error(ErrorCode::kFormatError,
                path.string() + ": unexpected header '" + line + "'");

  Dataset d;
  std::size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const std::string where = path.string() + ":" + std::to_string(row);
    std::array<double, 12> v;
    const char *p = line.data(), *end = line.data() + line.size();
    for (int k = 0; k < 12; ++k) {
      const auto [next, ec] = std::from_chars(p, end, v[k]);
      if (ec != std::errc() || !std::isfinite(v[k]))
        throw Error(ErrorCode::kFormatError,
                    where + ": cell " + std::to_string(k + 1) + " is not a finite number");
      p = next;
      if (k < 11) {
        if (p == end || *p != ',')
          throw Error(ErrorCode::kFormatError, where + ": expected 12 cells");
        ++p;
      }
    }
    if (p != end)
      throw Error(ErrorCode::kFormatError, where + ": trailing characters");
    d.points.push_back({ SymTensor3(v[0], v[1], v[2], v[3], v[4], v[5]),
                         SymTensor3(v[6], v[7], v[8], v[9], v[10], v[11]) });
  }

  const std::filesystem::path side = path.string() + ".json";
  if (std::filesystem::exists(side)) {
    std::ifstream s(side);
    try {
      d.metadata = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kFormatError, side.string() + ": " + e.what());
    }
  }
  return d;
}

}  // namespace pann
