//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include "pann/calibrate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "pann/errors.hpp"
#include "pann/kernels.hpp"

namespace pann {

namespace {

// full contraction weights in Voigt order
constexpr double kW[6] = { 1, 1, 1, 2, 2, 2 };

void require_data(const Dataset &d) {
  if (d.empty())
    throw Error(ErrorCode::kEmptyDataset, "dataset has no tuples");
}

double tensor_sq(const Tensor3 &a) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += a(i, j) * a(i, j);
  return s;
}

}  // namespace

std::string_view to_string(Optimizer o) {
  return o == Optimizer::kLbfgs ? "lbfgs" : "lm";
}

Optimizer parse_optimizer(std::string_view s) {
  if (s == "lbfgs")
    return Optimizer::kLbfgs;
  if (s == "lm")
    return Optimizer::kLevenbergMarquardt;
  throw Error(ErrorCode::kConfigError, "unknown optimizer: " + std::string(s));
}

void CalibrationConfig::validate() const {
  if (restarts < 1)
    throw Error(ErrorCode::kConfigError, "restarts must be >= 1");
  if (max_iterations < 0)
    throw Error(ErrorCode::kConfigError, "max_iterations must be >= 0");
  if (!(gradient_tolerance >= 0) || !(loss_floor >= 0))
    throw Error(ErrorCode::kConfigError, "tolerances must be >= 0");
  if (threads < 1)
    throw Error(ErrorCode::kConfigError, "threads must be >= 1");
  if (memory < 1)
    throw Error(ErrorCode::kConfigError, "memory must be >= 1");
}

void to_json(nlohmann::json &j, const CalibrationConfig &c) {
  j = nlohmann::json { { "restarts", c.restarts },
                       { "max_iterations", c.max_iterations },
                       { "gradient_tolerance", c.gradient_tolerance },
                       { "loss_floor", c.loss_floor },
                       { "seed", c.seed },
                       { "memory", c.memory },
                       { "optimizer", to_string(c.optimizer) } };
}

void from_json(const nlohmann::json &j, CalibrationConfig &c) {
  c.restarts = j.value("restarts", c.restarts);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.gradient_tolerance = j.value("gradient_tolerance", c.gradient_tolerance);
  c.loss_floor = j.value("loss_floor", c.loss_floor);
  c.seed = j.value("seed", c.seed);
  c.memory = j.value("memory", c.memory);
  if (j.contains("optimizer"))
    c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
  c.validate();
}

void to_json(nlohmann::json &j, const CalibrationStats &s) {
  nlohmann::json runs = nlohmann::json::array();
  for (const RestartRecord &r: s.restarts) {
    nlohmann::json e { { "seed", r.seed },
                       { "iterations", r.iterations },
                       { "stop", to_string(r.reason) } };
    e["loss"] = std::isfinite(r.loss) ? nlohmann::json(r.loss) : nlohmann::json();
    runs.push_back(e);
  }
  j = nlohmann::json { { "seed", s.seed },
                       { "best_restart", s.best_restart },
                       { "train_mse", s.train_mse },
                       { "restarts", runs } };
  j["test_mse"] = s.test_mse ? nlohmann::json(*s.test_mse) : nlohmann::json();
}

double loss(const PannModel &model, const Dataset &data) {
  require_data(data);
  double s = 0;
  for (const DataPoint &p: data.points) {
    const SymTensor3 r = p.t - model.stress(p.c);
    s += contract(r, r);
  }
  return s / data.size();
}

double loss(const SimpleFPModel &model, const Dataset &data) {
  require_data(data);
  double s = 0;
  for (const DataPoint &p: data.points) {
    const Tensor3 f = Tensor3::from(spd_sqrt(p.c));
    s += tensor_sq(f * Tensor3::from(p.t) - model.first_pk(f));
  }
  return s / data.size();
}

double loss_on_second_pk(const SimpleFPModel &model, const Dataset &data) {
  require_data(data);
  double s = 0;
  for (const DataPoint &p: data.points)
    s += tensor_sq(Tensor3::from(p.t) - model.second_pk(p.c));
  return s / data.size();
}

PannObjective::PannObjective(ModelVariant variant, MaterialSymmetry sym,
                             NetworkArchitecture arch, const Dataset &data)
    : variant_(variant), sym_(std::move(sym)), arch_(std::move(arch)) {
  if (variant_ == ModelVariant::kSimpleFP)
    throw Error(ErrorCode::kInvalidArgument,
                "use SimpleFPObjective for the F -> P baseline");
  require_data(data);
  arch_.input_dim = sym_.input_dim();
  arch_.constrain_weights = variant_constrained(variant_);
  arch_.validate();
  widths_ = arch_.widths();
  n_params_ = pann::parameter_count(arch_);
  n_ = data.size();
  m_ = sym_.input_dim();
  normalized_ = variant_normalized(variant_);
  stride_ = n_ + (normalized_ ? 1 : 0);

  x_.assign(m_ * stride_, 0.0);
  basis_.assign(m_ * 6 * n_, 0.0);
  target_.assign(6 * n_, 0.0);
  const bool growth = variant_has_growth(variant_);
  for (std::size_t i = 0; i < n_; ++i) {
    const DataPoint &p = data.points[i];
    const InvariantSet inv = compute_invariants(p.c, sym_);
    const auto in = inv.inputs();
    for (int a = 0; a < m_; ++a) {
      x_[a * stride_ + i] = in[a];
      const SymTensor3 &d = inv.input_derivative(a);
      for (int c = 0; c < 6; ++c)
        basis_[(a * 6 + c) * n_ + i] = 2.0 * d[c];
    }
    SymTensor3 t = p.t;
    if (growth)
      t -= growth_stress(inv.j, inv.c_inv);
    for (int c = 0; c < 6; ++c)
      target_[c * n_ + i] = t[c];
  }
  if (normalized_) {
    const auto ref = reference_inputs(sym_);
    for (int a = 0; a < m_; ++a)
      x_[a * stride_ + n_] = ref[a];
  }
}

PannObjective::Workspace PannObjective::make_workspace() const {
  return { std::vector<double>(stride_), std::vector<double>(m_ * stride_),
           std::vector<double>(m_ * stride_), {} };
}

double PannObjective::evaluate(std::span<const double> theta,
                               std::span<double> grad) const {
  Workspace ws = make_workspace();
  return evaluate(theta, grad, ws);
}

double PannObjective::evaluate(std::span<const double> theta,
                               std::span<double> grad, Workspace &ws) const {
  if (theta.size() != n_params_)
    throw Error(ErrorCode::kDimensionMismatch, "parameter vector length");
  const kernels::NetworkView view { widths_, theta.data() };
  const kernels::BatchInputs in { x_.data(), stride_, stride_ };
  kernels::forward_batch(view, in, ws.psi.data(), ws.grad.data(), stride_);

  // Normalization terms act as constant shifts of dpsi/dI.
  std::array<double, 6> shift {};
  NormalizationConstants k;
  if (normalized_) {
    std::array<double, 6> g0 {};
    for (int a = 0; a < m_; ++a)
      g0[a] = ws.grad[a * stride_ + n_];
    k = normalization_from_gradient(sym_, std::span(g0.data(), m_));
    shift = normalization_shift(std::span(g0.data(), m_), nullptr);
  }

  const bool want_grad = !grad.empty();
  const double inv_n = 1.0 / static_cast<double>(n_);
  std::array<double, 6> v_sum {};
  double total = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    std::array<double, 6> r;
    for (int c = 0; c < 6; ++c)
      r[c] = target_[c * n_ + i];
    for (int a = 0; a < m_; ++a) {
      const double g = ws.grad[a * stride_ + i] + shift[a];
      for (int c = 0; c < 6; ++c)
        r[c] -= g * basis_[(a * 6 + c) * n_ + i];
    }
    double sq = 0;
    for (int c = 0; c < 6; ++c)
      sq += kW[c] * r[c] * r[c];
    total += sq;
    if (want_grad) {
      for (int a = 0; a < m_; ++a) {
        double v = 0;
        for (int c = 0; c < 6; ++c)
          v += kW[c] * r[c] * basis_[(a * 6 + c) * n_ + i];
        v *= -2.0 * inv_n;
        ws.dir[a * stride_ + i] = v;
        v_sum[a] += v;
      }
    }
  }
  const double value = total * inv_n;
  if (!want_grad || !std::isfinite(value))
    return value;

  if (normalized_) {
    // Chain rule through the constants, routed as one extra tuple at I0.
    std::array<double, 6> v0 {};
    if (sym_.is_isotropic()) {
      const double s = v_sum[3];
      v0 = { s, 2 * s, s, -s, 0, 0 };
    } else {
      const double tr_g = sym_.structural().trace();
      const double lo = v_sum[5];  // d loss / d (o / 2)
      v0 = { lo, 2 * lo, lo, 0, tr_g * lo, -lo };
      double dx = 0;
      if (k.x > 0)
        dx = v_sum[4] + tr_g * lo;
      else if (k.x < 0)
        dx = -v_sum[3];
      v0[3] += dx;
      v0[4] -= dx;
    }
    for (int a = 0; a < m_; ++a)
      ws.dir[a * stride_ + n_] = v0[a];
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  kernels::dual_backward_batch(view, in, ws.dir.data(), grad.data());
  return value;
}

std::array<double, 6>
PannObjective::normalization_shift(std::span<const double> g0,
                                   double *jac) const {
  std::array<double, 6> shift {};
  const NormalizationConstants k = normalization_from_gradient(sym_, g0);
  if (jac != nullptr)
    std::fill(jac, jac + m_ * m_, 0.0);
  if (sym_.is_isotropic()) {
    shift[3] = 0.5 * k.n;
    if (jac != nullptr) {
      const double row[4] = { 1, 2, 1, -1 };
      std::copy(row, row + 4, jac + 3 * m_);
    }
    return shift;
  }
  shift[3] = k.p;
  shift[4] = k.q;
  shift[5] = 0.5 * k.o;
  if (jac != nullptr) {
    // x = g0[3] - g0[4]; p = relu(-x), q = relu(x)
    const double tr_g = sym_.structural().trace();
    const double dp = k.x < 0 ? -1.0 : 0.0;
    const double dq = k.x > 0 ? 1.0 : 0.0;
    jac[3 * m_ + 3] = dp;
    jac[3 * m_ + 4] = -dp;
    jac[4 * m_ + 3] = dq;
    jac[4 * m_ + 4] = -dq;
    const double row[6] = { 1, 2, 1, tr_g * dq, tr_g * (1 - dq), -1 };
    std::copy(row, row + 6, jac + 5 * m_);
  }
  return shift;
}

double PannObjective::residuals(std::span<const double> theta,
                                std::span<double> rho,
                                std::span<double> jacobian,
                                Workspace &ws) const {
  if (theta.size() != n_params_ || rho.size() != residual_count())
    throw Error(ErrorCode::kDimensionMismatch, "residual buffer length");
  const bool want_jac = !jacobian.empty();
  if (want_jac && jacobian.size() != residual_count() * n_params_)
    throw Error(ErrorCode::kDimensionMismatch, "jacobian buffer length");
  const kernels::NetworkView view { widths_, theta.data() };
  const kernels::BatchInputs in { x_.data(), stride_, stride_ };
  kernels::forward_batch(view, in, ws.psi.data(), ws.grad.data(), stride_);

  std::array<double, 6> shift {};
  std::array<double, 36> dshift {};
  if (normalized_) {
    std::array<double, 6> g0 {};
    for (int a = 0; a < m_; ++a)
      g0[a] = ws.grad[a * stride_ + n_];
    shift = normalization_shift(std::span(g0.data(), m_), dshift.data());
  }

  const double inv_n = 1.0 / static_cast<double>(n_);
  std::array<double, 6> scale;
  for (int c = 0; c < 6; ++c)
    scale[c] = std::sqrt(kW[c] * inv_n);
  double total = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (int c = 0; c < 6; ++c) {
      double r = target_[c * n_ + i];
      for (int a = 0; a < m_; ++a)
        r -= (ws.grad[a * stride_ + i] + shift[a]) * basis_[(a * 6 + c) * n_ + i];
      r *= scale[c];
      rho[i * 6 + c] = r;
      total += r * r;
    }
  }
  if (!want_jac)
    return total;

  const std::size_t np = n_params_;
  ws.rows.assign(stride_ * m_ * np, 0.0);
  kernels::input_gradient_jacobian(view, in, ws.rows.data(), np);
  // Shift rows: d shift_a / d theta = sum_b dshift_ab G_b(I0).
  std::vector<double> shift_rows(m_ * np, 0.0);
  if (normalized_) {
    const double *ref = ws.rows.data() + n_ * m_ * np;
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b) {
        const double d = dshift[a * m_ + b];
        if (d == 0)
          continue;
        for (std::size_t p = 0; p < np; ++p)
          shift_rows[a * np + p] += d * ref[b * np + p];
      }
  }
  std::fill(jacobian.begin(), jacobian.end(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double *g_rows = ws.rows.data() + i * m_ * np;
    if (normalized_)
      for (std::size_t q = 0; q < m_ * np; ++q)
        g_rows[q] += shift_rows[q];
    for (int c = 0; c < 6; ++c) {
      double *row = jacobian.data() + (i * 6 + c) * np;
      for (int a = 0; a < m_; ++a) {
        const double f = -scale[c] * basis_[(a * 6 + c) * n_ + i];
        const double *g = g_rows + a * np;
        for (std::size_t p = 0; p < np; ++p)
          row[p] += f * g[p];
      }
    }
  }
  return total;
}

SimpleFPObjective::SimpleFPObjective(int nodes, const Dataset &data)
    : nodes_(nodes) {
  if (nodes < 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least one hidden node");
  require_data(data);
  for (const DataPoint &p: data.points) {
    const Tensor3 f = Tensor3::from(spd_sqrt(p.c));
    const Tensor3 pk = f * Tensor3::from(p.t);
    std::array<double, 9> fa, pa;
    for (int c = 0; c < 9; ++c) {
      fa[c] = f(c / 3, c % 3);
      pa[c] = pk(c / 3, c % 3);
    }
    f_.push_back(fa);
    p_.push_back(pa);
  }
}

double SimpleFPObjective::evaluate(std::span<const double> theta,
                                   std::span<double> grad) const {
  constexpr int K = SimpleFPModel::kComponents;
  const SimpleFPModel layout(nodes_);
  if (theta.size() != parameter_count())
    throw Error(ErrorCode::kDimensionMismatch, "parameter vector length");
  const double *w = theta.data() + layout.w_offset();
  const double *b = theta.data() + layout.b_offset();
  const double *wo = theta.data() + layout.out_offset();
  const double *bo = theta.data() + layout.bias_out_offset();
  const bool want_grad = !grad.empty();
  if (want_grad)
    std::fill(grad.begin(), grad.end(), 0.0);

  const double inv_n = 1.0 / static_cast<double>(f_.size());
  std::vector<double> z(nodes_), s(nodes_);
  double total = 0;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto &f = f_[i];
    std::array<double, K> r = p_[i];
    for (int c = 0; c < K; ++c)
      r[c] -= bo[c];
    for (int a = 0; a < nodes_; ++a) {
      z[a] = b[a];
      for (int c = 0; c < K; ++c)
        z[a] += w[a * K + c] * f[c];
      s[a] = softplus(z[a]);
      for (int c = 0; c < K; ++c)
        r[c] -= wo[a * K + c] * s[a];
    }
    for (int c = 0; c < K; ++c)
      total += r[c] * r[c];
    if (!want_grad)
      continue;
    std::array<double, K> gbar;
    for (int c = 0; c < K; ++c) {
      gbar[c] = -2.0 * inv_n * r[c];
      grad[layout.bias_out_offset() + c] += gbar[c];
    }
    for (int a = 0; a < nodes_; ++a) {
      double sbar = 0;
      for (int c = 0; c < K; ++c) {
        grad[layout.out_offset() + a * K + c] += gbar[c] * s[a];
        sbar += gbar[c] * wo[a * K + c];
      }
      const double zbar = sbar * logistic(z[a]);
      grad[layout.b_offset() + a] += zbar;
      for (int c = 0; c < K; ++c)
        grad[layout.w_offset() + a * K + c] += zbar * f[c];
    }
  }
  return total * inv_n;
}

namespace {

template<class Objective>
std::vector<double> central_differences(const Objective &obj,
                                        std::span<const double> theta) {
  std::vector<double> t(theta.begin(), theta.end()), g(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double t0 = t[k], h = 1e-6 * std::max(1.0, std::abs(t0));
    t[k] = t0 + h;
    const double fp = obj.evaluate(t, {});
    t[k] = t0 - h;
    const double fm = obj.evaluate(t, {});
    t[k] = t0;
    g[k] = (fp - fm) / (2 * h);
  }
  return g;
}

struct RestartOutcome {
  RestartRecord record;
  std::vector<double> theta;
};

/// Runs every restart, optionally on several threads, and returns them in
/// restart order.
template<class Start, class Run>
std::vector<RestartOutcome> run_restarts(const CalibrationConfig &cfg,
                                         Start &&start, Run &&run) {
  std::vector<RestartOutcome> out(cfg.restarts);
  std::atomic<int> next { 0 };
  const auto worker = [&] {
    for (int r; (r = next.fetch_add(1)) < cfg.restarts;) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
      LbfgsResult res = run(start(seed));
      RestartOutcome &o = out[r];
      o.record.seed = seed;
      o.record.iterations = res.iterations;
      o.record.reason = res.reason;
      o.record.loss = std::isfinite(res.f)
                          ? res.f
                          : std::numeric_limits<double>::infinity();
      o.theta = std::move(res.x);
    }
  };
  const int n_threads = std::min(cfg.threads, cfg.restarts);
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t: pool)
    t.join();
  return out;
}

int pick_best(const std::vector<RestartOutcome> &runs) {
  int best = -1;
  for (int r = 0; r < static_cast<int>(runs.size()); ++r)
    if (std::isfinite(runs[r].record.loss)
        && (best < 0 || runs[r].record.loss < runs[best].record.loss))
      best = r;
  if (best < 0)
    throw Error(ErrorCode::kNonFiniteLoss,
                "every restart produced a non-finite loss (first: restart 0, seed "
                    + std::to_string(runs.front().record.seed) + ")");
  return best;
}

LbfgsOptions lbfgs_options(const CalibrationConfig &cfg) {
  LbfgsOptions o;
  o.max_iterations = cfg.max_iterations;
  o.gradient_tolerance = cfg.gradient_tolerance;
  o.loss_floor = cfg.loss_floor;
  o.memory = cfg.memory;
  return o;
}

// Diagonal change of variables theta = D u used only inside the optimizer:
// output weights are measured in units of the RMS target stress so that the
// initial network output is on the scale of the data. D is positive, so the
// feasible set maps onto itself.
class ParamMap {
public:
  ParamMap(const NetworkParams &layout, const Dataset &data) {
    const std::size_t np = layout.size();
    scale_.assign(np, 1.0);
    double ms = 0;
    for (const DataPoint &p: data.points)
      ms += contract(p.t, p.t);
    const double rms = std::sqrt(ms / static_cast<double>(data.size()));
    if (std::isfinite(rms) && rms > 0)
      for (std::size_t k = layout.output_offset(); k < np; ++k)
        scale_[k] = rms;
  }

  void to_theta(std::span<const double> u, std::span<double> theta) const {
    for (std::size_t k = 0; k < u.size(); ++k)
      theta[k] = scale_[k] * u[k];
  }

  void from_theta(std::span<const double> theta, std::span<double> u) const {
    for (std::size_t k = 0; k < u.size(); ++k)
      u[k] = theta[k] / scale_[k];
  }

  /// Gradient with respect to u from the gradient with respect to theta.
  void pull_back(std::span<double> g) const {
    for (std::size_t k = 0; k < g.size(); ++k)
      g[k] *= scale_[k];
  }

private:
  std::vector<double> scale_;
};

LmOptions lm_options(const CalibrationConfig &cfg) {
  LmOptions o;
  o.max_iterations = cfg.max_iterations;
  o.gradient_tolerance = cfg.gradient_tolerance;
  o.loss_floor = cfg.loss_floor;
  return o;
}

}  // namespace

std::vector<double> loss_gradient(const PannObjective &objective,
                                  std::span<const double> theta) {
  return central_differences(objective, theta);
}

std::vector<double> loss_gradient(const SimpleFPObjective &objective,
                                  std::span<const double> theta) {
  return central_differences(objective, theta);
}

std::vector<double> loss_gradient(const PannModel &model, const Dataset &data) {
  const PannObjective obj(model.variant(), model.symmetry(),
                          model.network().architecture(), data);
  return loss_gradient(obj, model.network().flat());
}

CalibrationResult calibrate(ModelVariant variant, const MaterialSymmetry &sym,
                            NetworkArchitecture arch, const SplitDataset &data,
                            const CalibrationConfig &config) {
  config.validate();
  const PannObjective obj(variant, sym, std::move(arch), data.calibration);
  const NetworkArchitecture &a = obj.architecture();
  const NetworkParams layout(a);
  const LbfgsOptions opt = lbfgs_options(config);

  const ParamMap map(layout, data.calibration);

  const auto runs = run_restarts(
      config,
      [&](std::uint64_t seed) {
        const NetworkParams p = initialize_network(a, seed);
        return std::vector<double>(p.flat().begin(), p.flat().end());
      },
      [&](std::vector<double> x0) {
        auto ws = obj.make_workspace();
        std::vector<bool> bounded(x0.size(), false);
        if (a.constrain_weights)
          bounded = layout.weight_mask();
        if (config.optimizer == Optimizer::kLevenbergMarquardt) {
          const ResidualFn fn = [&](std::span<const double> x, std::span<double> r,
                                    std::span<double> jac) {
            return obj.residuals(x, r, jac, ws);
          };
          return minimize_projected_lm(fn, obj.residual_count(), std::move(x0),
                                       bounded, lm_options(config));
        }
        std::vector<double> theta(x0.size());
        const ObjectiveFn fn = [&](std::span<const double> u, std::span<double> g) {
          map.to_theta(u, theta);
          const double f = obj.evaluate(theta, g, ws);
          if (!g.empty())
            map.pull_back(g);
          return f;
        };
        std::vector<double> u0(x0.size());
        map.from_theta(x0, u0);
        LbfgsResult r = minimize_projected_lbfgs(fn, std::move(u0), bounded, opt);
        map.to_theta(std::vector<double>(r.x), r.x);
        return r;
      });

  const int best = pick_best(runs);
  CalibrationResult res { PannModel(variant, sym, NetworkParams(a, runs[best].theta)),
                          {} };
  for (const auto &r: runs)
    res.stats.restarts.push_back(r.record);
  res.stats.best_restart = best;
  res.stats.seed = config.seed;
  res.stats.train_mse = loss(res.model, data.calibration);
  if (!data.test.empty())
    res.stats.test_mse = loss(res.model, data.test);
  return res;
}

SimpleFPCalibrationResult calibrate_simple_fp(int nodes,
                                              const SplitDataset &data,
                                              const CalibrationConfig &config) {
  config.validate();
  const SimpleFPObjective obj(nodes, data.calibration);
  const LbfgsOptions opt = lbfgs_options(config);

  const auto runs = run_restarts(
      config,
      [&](std::uint64_t seed) {
        const SimpleFPModel m = initialize_simple_fp(nodes, seed);
        return std::vector<double>(m.flat().begin(), m.flat().end());
      },
      [&](std::vector<double> x0) {
        const ObjectiveFn fn = [&](std::span<const double> x, std::span<double> g) {
          return obj.evaluate(x, g);
        };
        const std::vector<bool> free(x0.size(), false);
        return minimize_projected_lbfgs(fn, std::move(x0), free, opt);
      });

  const int best = pick_best(runs);
  SimpleFPCalibrationResult res { SimpleFPModel(nodes, runs[best].theta), {} };
  for (const auto &r: runs)
    res.stats.restarts.push_back(r.record);
  res.stats.best_restart = best;
  res.stats.seed = config.seed;
  res.stats.train_mse = loss(res.model, data.calibration);
  if (!data.test.empty())
    res.stats.test_mse = loss(res.model, data.test);
  return res;
}

}  // namespace pann
