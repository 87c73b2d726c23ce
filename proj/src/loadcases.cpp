//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/loadcases.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pann/errors.hpp"

namespace pann {

namespace {

constexpr double kBracketLo = 0.2, kBracketHi = 5.0;
constexpr int kMaxIterations = 100;

struct LateralProblem {
  const StressMap &model;
  LoadKind kind;
  double l1;

  SymTensor3 c(double l2) const {
    const double a = l1 * l1, b = l2 * l2;
    return kind == LoadKind::kUniaxial ? SymTensor3::diagonal(a, b, b)
                                       : SymTensor3::diagonal(a, a, b);
  }
  // component that must vanish
  int free_index() const { return kind == LoadKind::kUniaxial ? 1 : 2; }
  double residual(double l2, SymTensor3 *t = nullptr) const {
    const SymTensor3 s = model(c(l2));
    if (t)
      *t = s;
    return s[free_index()];
  }
};

LoadPoint solve_lateral(const LateralProblem &pr,
                        std::optional<double> guess) {
  if (!(pr.l1 > 0))
    throw Error(ErrorCode::kInvalidArgument, "stretch must be positive");
  const std::string where = std::string(to_string(pr.kind)) + " l1 = "
                            + std::to_string(pr.l1);

  double lo = kBracketLo, hi = kBracketHi;
  double r_lo = pr.residual(lo), r_hi = pr.residual(hi);
  if (!(std::isfinite(r_lo) && std::isfinite(r_hi)) || r_lo * r_hi > 0)
    throw Error(ErrorCode::kNewtonDivergence,
                "no sign change of the lateral stress on [0.2, 5] for " + where);

  double x = guess.value_or(1.0);
  if (!(x > lo && x < hi))
    x = 0.5 * (lo + hi);

  SymTensor3 t;
  double r = pr.residual(x, &t);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double tol = 1e-12 * std::max(1.0, std::abs(t[0]));
    if (std::abs(r) <= tol)
      return { pr.l1, x, pr.c(x), t, std::abs(r), it };

    // shrink the bracket around the root
    if ((r < 0) == (r_lo < 0)) {
      lo = x;
      r_lo = r;
    } else {
      hi = x;
      r_hi = r;
    }
    if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * x)
      break;

    const double h = 1e-7 * x;
    const double slope = (pr.residual(x + h) - pr.residual(x - h)) / (2 * h);
    double next = x - r / slope;
    if (!std::isfinite(next) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);
    x = next;
    r = pr.residual(x, &t);
  }

  // Roundoff can stall the tight target; the emitted bound is looser.
  if (std::abs(r) <= 1e-10 * std::max(1.0, std::abs(t[0])))
    return { pr.l1, x, pr.c(x), t, std::abs(r), kMaxIterations };
  throw Error(ErrorCode::kNewtonDivergence,
              "lateral stress residual " + std::to_string(r)
                  + " kPa not reduced for " + where);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i)
    v[i] = (i == n - 1) ? b : a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

std::string_view to_string(LoadKind k) {
  switch (k) {
  case LoadKind::kUniaxial:
    return "uniaxial";
  case LoadKind::kBiaxial:
    return "biaxial";
  case LoadKind::kShear:
    return "shear";
  }
  return "?";
}

LoadKind parse_load_kind(std::string_view s) {
  if (s == "uniaxial")
    return LoadKind::kUniaxial;
  if (s == "biaxial")
    return LoadKind::kBiaxial;
  if (s == "shear")
    return LoadKind::kShear;
  throw Error(ErrorCode::kConfigError, "unknown load kind '" + std::string(s) + "'");
}

LoadPoint solve_uniaxial(const StressMap &model, double l1,
                         std::optional<double> guess) {
  return solve_lateral({ model, LoadKind::kUniaxial, l1 }, guess);
}

LoadPoint solve_biaxial(const StressMap &model, double l1,
                        std::optional<double> guess) {
  return solve_lateral({ model, LoadKind::kBiaxial, l1 }, guess);
}

LoadPoint shear_point(const StressMap &model, double gamma) {
  if (!(gamma >= 0))
    throw Error(ErrorCode::kInvalidArgument, "shear amount must be >= 0");
  const SymTensor3 c(1, gamma * gamma + 1, 1, gamma, 0, 0);
  return { gamma, 1.0, c, model(c), 0.0, 0 };
}

std::vector<double> control_grid(const LoadPath &p) {
  if (p.count < 1)
    throw Error(ErrorCode::kInvalidArgument, "path needs at least one point");
  if (p.hi < p.lo)
    throw Error(ErrorCode::kInvalidArgument, "path range is reversed");
  if (p.kind == LoadKind::kShear) {
    if (p.lo < 0)
      throw Error(ErrorCode::kInvalidArgument, "shear range must be >= 0");
    return linspace(p.lo, p.hi, p.count);
  }
  if (!(p.lo > 0))
    throw Error(ErrorCode::kInvalidArgument, "stretches must be positive");
  if (!(p.lo < 1 && p.hi > 1))
    return linspace(p.lo, p.hi, p.count);

  // Both branches contain 1. Without duplication one copy is dropped.
  const int total = p.duplicate_identity ? p.count : p.count + 1;
  if (total < 4)
    throw Error(ErrorCode::kInvalidArgument,
                "a path through 1 needs at least 4 points with duplication");
  int n_c = static_cast<int>(std::lround(total * (1 - p.lo) / (p.hi - p.lo)));
  n_c = std::clamp(n_c, 2, total - 2);
  std::vector<double> g = linspace(p.lo, 1.0, n_c);
  const std::vector<double> t = linspace(1.0, p.hi, total - n_c);
  g.insert(g.end(), t.begin() + (p.duplicate_identity ? 0 : 1), t.end());
  return g;
}

std::vector<LoadPoint> run_path(const StressMap &model, const LoadPath &p) {
  const std::vector<double> grid = control_grid(p);
  std::vector<LoadPoint> out;
  out.reserve(grid.size());
  std::optional<double> guess;
  for (double x: grid) {
    LoadPoint pt;
    switch (p.kind) {
    case LoadKind::kUniaxial:
      pt = solve_uniaxial(model, x, guess);
      break;
    case LoadKind::kBiaxial:
      pt = solve_biaxial(model, x, guess);
      break;
    case LoadKind::kShear:
      pt = shear_point(model, x);
      break;
    }
    guess = pt.lateral_stretch;
    out.push_back(pt);
  }
  return out;
}

Dataset path_dataset(const StressMap &model, const LoadPath &p,
                     const nlohmann::json &source) {
  Dataset d;
  for (const LoadPoint &pt: run_path(model, p))
    d.points.push_back({ pt.c, pt.t });
  d.metadata["source"] = source;
  d.metadata["load"] = { { "kind", to_string(p.kind) },
                         { "range", { p.lo, p.hi } },
                         { "count", p.count },
                         { "duplicate_identity", p.duplicate_identity } };
  return d;
}

Dataset apply_offset(Dataset data, double offset) {
  for (DataPoint &p: data.points)
    p.t[0] += offset;
  data.metadata["perturbations"].push_back(
      { { "type", "offset" }, { "component", "T11" }, { "value_kpa", offset } });
  return data;
}

Dataset apply_noise(Dataset data, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0))
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
  if (sigma > 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, sigma);
    for (DataPoint &p: data.points)
      p.t[0] += n(rng);
  }
  data.metadata["perturbations"].push_back({ { "type", "noise" },
                                             { "component", "T11" },
                                             { "sigma_kpa", sigma },
                                             { "seed", seed } });
  return data;
}

}  // namespace pann
