//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "pann/errors.hpp"

namespace pann {

namespace {

double log_space(double lo, double hi, int k, int count) {
  if (count == 1)
    return lo;
  const double t = static_cast<double>(k) / (count - 1);
  return lo * std::pow(hi / lo, t);
}

double lin_space(double lo, double hi, int k, int count) {
  if (count == 1)
    return lo;
  return lo + (hi - lo) * static_cast<double>(k) / (count - 1);
}

// Radical inverse of i in the given base.
double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

class Tracker {
public:
  explicit Tracker(std::string sweep) { report_.sweep = std::move(sweep); }

  void add(const SymTensor3 &c, double psi, std::initializer_list<double> params) {
    ++report_.samples;
    if (psi < kEnergyViolation || !std::isfinite(psi))
      ++report_.violations;
    if (report_.samples == 1 || psi < report_.min_energy) {
      report_.min_energy = psi;
      report_.argmin = c;
      report_.argmin_parameters.assign(params);
    }
  }

  NonNegReport take() { return std::move(report_); }

private:
  NonNegReport report_;
};

void check_range(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi >= lo) || count < 1)
    throw Error(ErrorCode::kInvalidArgument, "scan range or count");
}

}  // namespace

double percentile(const std::vector<double> &sorted, double q) {
  if (sorted.empty())
    throw Error(ErrorCode::kInvalidArgument, "percentile of an empty sample");
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

ErrorStats error_stats(std::vector<double> values) {
  if (values.empty())
    throw Error(ErrorCode::kInvalidArgument, "no error values");
  for (double v: values)
    if (!(v >= 0) || !std::isfinite(v))
      throw Error(ErrorCode::kInvalidArgument, "error values must be finite and >= 0");
  ErrorStats s;
  s.values = std::move(values);
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  s.median = percentile(sorted, 50);
  s.p25 = percentile(sorted, 25);
  s.p75 = percentile(sorted, 75);
  s.p1 = percentile(sorted, 1);
  s.p99 = percentile(sorted, 99);
  return s;
}

void to_json(nlohmann::json &j, const ErrorStats &s) {
  j = nlohmann::json { { "runs", s.values.size() }, { "median", s.median },
                       { "p25", s.p25 },            { "p75", s.p75 },
                       { "p1", s.p1 },              { "p99", s.p99 },
                       { "epsilon", s.values } };
}

double relative_error(const StressMap &model, const Dataset &data) {
  if (data.empty())
    throw Error(ErrorCode::kEmptyDataset, "dataset has no tuples");
  double num = 0, den = 0;
  for (const DataPoint &p: data.points) {
    num = std::max(num, frobenius_norm(p.t - model(p.c)));
    den = std::max(den, frobenius_norm(p.t));
  }
  if (!(den > 0))
    throw Error(ErrorCode::kAllZeroStress, "every data stress is zero");
  return num / den;
}

double relative_error(const PannModel &model, const Dataset &data) {
  return relative_error(model.stress_map(), data);
}

std::string epsilon_csv(const std::vector<double> &values) {
  std::string out = "epsilon\n";
  char buf[32];
  for (double v: values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out += buf;
  }
  return out;
}

HypothesisCheck check_iso_hypothesis(const PannModel &model, double lambda_lo,
                                     double lambda_hi, int count) {
  if (!model.symmetry().is_isotropic())
    throw Error(ErrorCode::kWrongSymmetry, "isotropic model required");
  check_range(lambda_lo, lambda_hi, count);
  HypothesisCheck h;
  h.min_d_i1 = h.min_d_i2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < count; ++k) {
    const double l = log_space(lambda_lo, lambda_hi, k, count);
    const auto g = model.invariant_gradient(SymTensor3::identity() * (l * l));
    h.min_d_i1 = std::min(h.min_d_i1, g[0]);
    h.min_d_i2 = std::min(h.min_d_i2, g[1]);
  }

  const NetworkParams &net = model.network();
  const NetworkArchitecture &arch = net.architecture();
  if (!arch.constrain_weights) {
    h.reason = "unconstrained weights: the sign of dpsi/dI1, dpsi/dI2 is not guaranteed";
    return h;
  }
  // With non-negative weights and a positive logistic, dpsi/dI_k > 0 on
  // every state iff a path of positive weights joins input k to the output.
  const std::vector<int> widths = arch.widths();
  const auto reaches_output = [&](int input) {
    std::vector<bool> live(widths[0], false);
    live[input] = true;
    for (std::size_t h = 1; h < widths.size(); ++h) {
      std::vector<bool> next(widths[h], false);
      for (int r = 0; r < widths[h]; ++r)
        for (int c = 0; c < widths[h - 1]; ++c)
          if (live[c] && net.weight(static_cast<int>(h), r, c) > 0)
            next[r] = true;
      live = std::move(next);
    }
    for (int r = 0; r < widths.back(); ++r)
      if (live[r] && net.output_weight(r) > 0)
        return true;
    return false;
  };
  const bool i1 = reaches_output(0), i2 = reaches_output(1);
  h.holds = i1 && i2 && h.min_d_i1 > 0 && h.min_d_i2 > 0;
  if (!i1 || !i2)
    h.reason = std::string("no positive weight path from ") + (!i1 ? "I1" : "I2");
  else if (!h.holds)
    h.reason = "derivative underflows to zero on the scan states";
  else
    h.reason = "positive weight paths from I1 and I2";
  return h;
}

void to_json(nlohmann::json &j, const NonNegReport &r) {
  j = nlohmann::json { { "sweep", r.sweep },
                       { "min_energy", r.min_energy },
                       { "argmin", r.argmin.components() },
                       { "argmin_parameters", r.argmin_parameters },
                       { "violations", r.violations },
                       { "samples", r.samples } };
  if (r.hypothesis)
    j["hypothesis"] = { { "holds", r.hypothesis->holds },
                        { "reason", r.hypothesis->reason },
                        { "min_dpsi_dI1", r.hypothesis->min_d_i1 },
                        { "min_dpsi_dI2", r.hypothesis->min_d_i2 } };
}

NonNegReport volumetric_scan(const EnergyMap &energy, double lo, double hi,
                             int count) {
  check_range(lo, hi, count);
  Tracker t("volumetric");
  // The undeformed state is always part of the scan.
  t.add(SymTensor3::identity(), energy(SymTensor3::identity()), { 1.0 });
  for (int k = 0; k < count; ++k) {
    const double l = log_space(lo, hi, k, count);
    const SymTensor3 c = SymTensor3::identity() * (l * l);
    t.add(c, energy(c), { l });
  }
  return t.take();
}

NonNegReport stretch_sweep(const EnergyMap &energy, double lo, double hi,
                           int per_axis) {
  check_range(lo, hi, per_axis);
  Tracker t("principal_stretches");
  for (int a = 0; a < per_axis; ++a) {
    const double l1 = log_space(lo, hi, a, per_axis);
    for (int b = 0; b < per_axis; ++b) {
      const double l2 = log_space(lo, hi, b, per_axis);
      for (int c = 0; c < per_axis; ++c) {
        const double l3 = log_space(lo, hi, c, per_axis);
        const SymTensor3 cc = SymTensor3::diagonal(l1 * l1, l2 * l2, l3 * l3);
        t.add(cc, energy(cc), { l1, l2, l3 });
      }
    }
  }
  return t.take();
}

NonNegReport nonneg_scan_iso(const PannModel &model, double lo, double hi,
                             int count, int fallback_per_axis) {
  HypothesisCheck h = check_iso_hypothesis(model, lo, hi, count);
  NonNegReport r = h.holds ? volumetric_scan(model.energy_map(), lo, hi, count)
                           : stretch_sweep(model.energy_map(), lo, hi,
                                           fallback_per_axis);
  r.hypothesis = std::move(h);
  return r;
}

NonNegReport nonneg_scan_transiso(const EnergyMap &energy,
                                  const TransIsoScanOptions &o) {
  if (!(o.lambda_lo > 0) || !(o.lambda_hi >= o.lambda_lo) || !(o.phi_hi >= o.phi_lo))
    throw Error(ErrorCode::kInvalidArgument, "scan ranges");
  Tracker t(o.dense_grid ? "transiso_grid" : "transiso_halton");
  const auto eval = [&](double l1, double l2, double l3, double p2, double p3) {
    const Rotation3 r = Rotation3::about_axes(p2, p3);
    const SymTensor3 c = rotate(r, SymTensor3::diagonal(l1 * l1, l2 * l2, l3 * l3));
    t.add(c, energy(c), { l1, l2, l3, p2, p3 });
  };
  eval(1, 1, 1, 0, 0);

  if (o.dense_grid) {
    const int n = o.grid_points;
    if (n < 1)
      throw Error(ErrorCode::kInvalidArgument, "grid_points must be >= 1");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            for (int e = 0; e < n; ++e)
              eval(log_space(o.lambda_lo, o.lambda_hi, a, n),
                   log_space(o.lambda_lo, o.lambda_hi, b, n),
                   log_space(o.lambda_lo, o.lambda_hi, c, n),
                   lin_space(o.phi_lo, o.phi_hi, d, n),
                   lin_space(o.phi_lo, o.phi_hi, e, n));
    return t.take();
  }

  constexpr unsigned kBases[5] = { 2, 3, 5, 7, 11 };
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double shift[5];
  for (double &s: shift)
    s = u01(rng);
  const double log_ratio = std::log(o.lambda_hi / o.lambda_lo);
  for (std::size_t i = 1; i < o.samples; ++i) {
    double u[5];
    for (int d = 0; d < 5; ++d) {
      const double v = radical_inverse(i, kBases[d]) + shift[d];
      u[d] = v - std::floor(v);
    }
    eval(o.lambda_lo * std::exp(log_ratio * u[0]),
         o.lambda_lo * std::exp(log_ratio * u[1]),
         o.lambda_lo * std::exp(log_ratio * u[2]),
         o.phi_lo + (o.phi_hi - o.phi_lo) * u[3],
         o.phi_lo + (o.phi_hi - o.phi_lo) * u[4]);
  }
  return t.take();
}

std::vector<SymTensor3> random_admissible_states(std::size_t count,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_l(std::log(0.7), std::log(1.5));
  std::normal_distribution<double> normal;
  std::vector<SymTensor3> out;
  out.reserve(count);
  while (out.size() < count) {
    const double l1 = std::exp(log_l(rng)), l2 = std::exp(log_l(rng)),
                 l3 = std::exp(log_l(rng));
    const double qw = normal(rng), qx = normal(rng), qy = normal(rng),
                 qz = normal(rng);
    if (qw * qw + qx * qx + qy * qy + qz * qz < 1e-12)
      continue;
    const Rotation3 r = Rotation3::from_quaternion(qw, qx, qy, qz);
    const SymTensor3 c = rotate(r, SymTensor3::diagonal(l1 * l1, l2 * l2, l3 * l3));
    if (is_admissible(c))
      out.push_back(c);
  }
  return out;
}

void to_json(nlohmann::json &j, const GradientAudit &a) {
  j = nlohmann::json { { "count", a.count },
                       { "seed", a.seed },
                       { "max_relative_deviation", a.max_relative_deviation },
                       { "worst_state", a.worst_state.components() } };
}

GradientAudit gradient_audit(const EnergyMap &energy, const StressMap &stress,
                             std::size_t count, std::uint64_t seed) {
  GradientAudit a;
  a.count = count;
  a.seed = seed;
  for (const SymTensor3 &c: random_admissible_states(count, seed)) {
    const double h = 1e-6 * std::max(1.0, frobenius_norm(c));
    SymTensor3 fd;
    for (int k = 0; k < 6; ++k) {
      // Off-diagonal slots move both C_ij and C_ji, which doubles dpsi.
      SymTensor3 cp = c, cm = c;
      cp[k] += h;
      cm[k] -= h;
      const double d = (energy(cp) - energy(cm)) / (2 * h);
      fd[k] = k < 3 ? 2 * d : d;
    }
    const SymTensor3 t = stress(c);
    const double scale = std::max({ frobenius_norm(t), frobenius_norm(fd), 1e-6 });
    const double dev = frobenius_norm(t - fd) / scale;
    if (dev > a.max_relative_deviation || !std::isfinite(dev)) {
      a.max_relative_deviation = std::isfinite(dev) ? dev : std::numeric_limits<double>::infinity();
      a.worst_state = c;
    }
  }
  return a;
}

void to_json(nlohmann::json &j, const LadderResult &r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const LadderEntry &e: r.entries)
    entries.push_back({ { "variant", to_string(e.variant) },
                        { "stats", e.stats },
                        { "train_mse", e.train_mse } });
  j = nlohmann::json { { "calibration_size", r.calibration_size },
                       { "test_size", r.test_size },
                       { "variants", entries } };
}

LadderResult variant_ladder_study(const MaterialSymmetry &sym,
                                  const Dataset &data,
                                  const LadderConfig &config) {
  if (config.runs < 1)
    throw Error(ErrorCode::kConfigError, "runs must be >= 1");
  const SplitDataset split_data =
      split(data, config.calibration_fraction, config.seed);
  LadderResult result;
  result.calibration_size = split_data.calibration.size();
  result.test_size = split_data.test.size();
  for (ModelVariant v: config.variants) {
    LadderEntry e { v, {}, {} };
    std::vector<double> eps;
    for (int r = 0; r < config.runs; ++r) {
      CalibrationConfig cfg = config.calibration;
      cfg.seed = config.seed
                 + static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(cfg.restarts);
      try {
        const CalibrationResult res =
            calibrate(v, sym, config.architecture, split_data, cfg);
        eps.push_back(relative_error(res.model, data));
        e.train_mse.push_back(res.stats.train_mse);
      } catch (const Error &err) {
        throw Error(err.code(), std::string("variant ") + std::string(to_string(v))
                                    + " run " + std::to_string(r) + ": " + err.what());
      }
    }
    e.stats = error_stats(std::move(eps));
    result.entries.push_back(std::move(e));
  }
  return result;
}

}  // namespace pann
