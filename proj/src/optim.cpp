//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/optim.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include <Eigen/Dense>

#include "pann/errors.hpp"

namespace pann {

std::string_view to_string(StopReason r) {
  switch (r) {
  case StopReason::kGradientTolerance:
    return "gradient_tolerance";
  case StopReason::kLossFloor:
    return "loss_floor";
  case StopReason::kIterationLimit:
    return "iteration_limit";
  case StopReason::kLineSearchFailed:
    return "line_search_failed";
  case StopReason::kNonFinite:
    return "non_finite";
  }
  return "?";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

}  // namespace

LbfgsResult minimize_projected_lbfgs(const ObjectiveFn &fn,
                                     std::vector<double> x0,
                                     const std::vector<bool> &bounded,
                                     const LbfgsOptions &opt) {
  const std::size_t n = x0.size();
  if (bounded.size() != n)
    throw Error(ErrorCode::kDimensionMismatch, "bound mask size");

  LbfgsResult res;
  std::vector<double> &x = res.x;
  x = std::move(x0);
  for (std::size_t k = 0; k < n; ++k)
    if (bounded[k] && x[k] < 0)
      x[k] = 0;

  std::vector<double> g(n), g_new(n), x_new(n), d(n), pg(n), alpha(opt.memory);
  std::vector<bool> active(n);
  std::deque<Pair> mem;

  double f = fn(x, g);
  res.evaluations = 1;
  if (!std::isfinite(f)) {
    res.f = f;
    res.reason = StopReason::kNonFinite;
    return res;
  }

  for (int it = 0;; ++it) {
    res.iterations = it;
    double pg_norm = 0;
    for (std::size_t k = 0; k < n; ++k) {
      active[k] = bounded[k] && x[k] <= 0 && g[k] > 0;
      pg[k] = active[k] ? 0.0 : g[k];
      pg_norm = std::max(pg_norm, std::abs(pg[k]));
    }
    if (f <= opt.loss_floor) {
      res.reason = StopReason::kLossFloor;
      break;
    }
    if (pg_norm <= opt.gradient_tolerance) {
      res.reason = StopReason::kGradientTolerance;
      break;
    }
    if (it >= opt.max_iterations) {
      res.reason = StopReason::kIterationLimit;
      break;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      // two-loop recursion on the free subspace
      d = pg;
      for (int m = static_cast<int>(mem.size()) - 1; m >= 0; --m) {
        alpha[m] = mem[m].rho * dot(mem[m].s, d);
        for (std::size_t k = 0; k < n; ++k)
          if (!active[k])
            d[k] -= alpha[m] * mem[m].y[k];
      }
      if (!mem.empty()) {
        const Pair &last = mem.back();
        const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
        for (double &v: d)
          v *= gamma;
      } else {
        const double scale = 1.0 / std::sqrt(dot(pg, pg));
        for (double &v: d)
          v *= scale;
      }
      for (std::size_t m = 0; m < mem.size(); ++m) {
        const double beta = mem[m].rho * dot(mem[m].y, d);
        for (std::size_t k = 0; k < n; ++k)
          if (!active[k])
            d[k] += (alpha[m] - beta) * mem[m].s[k];
      }
      for (std::size_t k = 0; k < n; ++k)
        d[k] = active[k] ? 0.0 : -d[k];

      if (dot(d, pg) >= 0) {
        mem.clear();
        continue;
      }

      double step = 1.0, f_new = 0;
      for (int bt = 0; bt < opt.max_backtracks; ++bt, step *= 0.5) {
        for (std::size_t k = 0; k < n; ++k) {
          x_new[k] = x[k] + step * d[k];
          if (bounded[k] && x_new[k] < 0)
            x_new[k] = 0;
        }
        f_new = fn(x_new, g_new);
        ++res.evaluations;
        double decrease = 0;
        for (std::size_t k = 0; k < n; ++k)
          decrease += g[k] * (x_new[k] - x[k]);
        if (std::isfinite(f_new) && f_new <= f + 1e-4 * decrease
            && decrease < 0) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        mem.clear();
        continue;
      }

      Pair p { std::vector<double>(n), std::vector<double>(n), 0 };
      for (std::size_t k = 0; k < n; ++k) {
        p.s[k] = x_new[k] - x[k];
        p.y[k] = g_new[k] - g[k];
      }
      const double sy = dot(p.s, p.y);
      if (sy > 1e-12 * std::sqrt(dot(p.s, p.s) * dot(p.y, p.y))) {
        p.rho = 1.0 / sy;
        mem.push_back(std::move(p));
        if (static_cast<int>(mem.size()) > opt.memory)
          mem.pop_front();
      }
      x.swap(x_new);
      g.swap(g_new);
      f = f_new;
    }
    if (!accepted) {
      res.iterations = it;
      res.reason = StopReason::kLineSearchFailed;
      break;
    }
  }
  res.f = f;
  return res;
}

LbfgsResult minimize_projected_lm(const ResidualFn &fn, std::size_t m,
                                  std::vector<double> x0,
                                  const std::vector<bool> &bounded,
                                  const LmOptions &opt) {
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const std::size_t n = x0.size();
  if (bounded.size() != n)
    throw Error(ErrorCode::kDimensionMismatch, "bound mask size");

  LbfgsResult res;
  std::vector<double> &x = res.x;
  x = std::move(x0);
  for (std::size_t k = 0; k < n; ++k)
    if (bounded[k] && x[k] < 0)
      x[k] = 0;

  std::vector<double> r(m), r_new(m), jac(m * n), x_new(n);
  Eigen::VectorXd g(n), step(n);
  Eigen::MatrixXd a(n, n);
  res.f = fn(x, r, jac);
  ++res.evaluations;
  double mu = opt.initial_damping, nu = 2;
  std::vector<int> free_idx;

  for (;;) {
    if (!std::isfinite(res.f)) {
      res.reason = StopReason::kNonFinite;
      return res;
    }
    if (res.f <= opt.loss_floor) {
      res.reason = StopReason::kLossFloor;
      return res;
    }
    const Eigen::Map<const Matrix> j(jac.data(), m, n);
    const Eigen::Map<const Eigen::VectorXd> rv(r.data(), m);
    a.setZero();
    a.selfadjointView<Eigen::Lower>().rankUpdate(j.transpose());
    a.triangularView<Eigen::StrictlyUpper>() = a.transpose();
    g.noalias() = 2.0 * (j.transpose() * rv);

    free_idx.clear();
    double pg_norm = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (bounded[k] && x[k] <= 0 && g[k] > 0)
        continue;
      free_idx.push_back(static_cast<int>(k));
      pg_norm = std::max(pg_norm, std::abs(g[k]));
    }
    if (pg_norm <= opt.gradient_tolerance) {
      res.reason = StopReason::kGradientTolerance;
      return res;
    }
    if (res.iterations >= opt.max_iterations) {
      res.reason = StopReason::kIterationLimit;
      return res;
    }
    ++res.iterations;

    const int nf = static_cast<int>(free_idx.size());
    Eigen::MatrixXd af(nf, nf);
    Eigen::VectorXd gf(nf), diag(nf);
    double max_diag = 0;
    for (int p = 0; p < nf; ++p) {
      gf[p] = g[free_idx[p]];
      for (int q = 0; q < nf; ++q)
        af(p, q) = a(free_idx[p], free_idx[q]);
      max_diag = std::max(max_diag, af(p, p));
    }
    for (int p = 0; p < nf; ++p)
      diag[p] = std::max(af(p, p), 1e-12 * max_diag + 1e-300);

    bool accepted = false;
    for (int rejections = 0; rejections < opt.max_rejections; ++rejections) {
      Eigen::MatrixXd damped = af;
      damped.diagonal() += mu * diag;
      const Eigen::VectorXd df = damped.ldlt().solve(-0.5 * gf);
      for (std::size_t k = 0; k < n; ++k)
        x_new[k] = x[k];
      for (int p = 0; p < nf; ++p) {
        const int k = free_idx[p];
        x_new[k] = x[k] + df[p];
        if (bounded[k] && x_new[k] < 0)
          x_new[k] = 0;
      }
      for (std::size_t k = 0; k < n; ++k)
        step[k] = x_new[k] - x[k];
      const double f_new = fn(x_new, r_new, {});
      ++res.evaluations;
      // Reduction predicted by the Gauss-Newton model |r + J s|^2.
      const double predicted = -(g.dot(step) + step.dot(a * step));
      if (std::isfinite(f_new) && f_new < res.f && predicted > 0) {
        const double ratio = (res.f - f_new) / predicted;
        mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * ratio - 1.0, 3));
        nu = 2;
        accepted = true;
        x.swap(x_new);
        break;
      }
      mu *= nu;
      nu *= 2;
    }
    if (!accepted) {
      res.reason = StopReason::kLineSearchFailed;
      return res;
    }
    res.f = fn(x, r, jac);
    ++res.evaluations;
  }
}

}  // namespace pann
