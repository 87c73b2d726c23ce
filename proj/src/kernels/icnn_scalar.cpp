//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#include <cstddef>
#include <span>
#include <vector>

#include "activation.hpp"
#include "pann/kernels.hpp"

namespace pann::kernels::scalar {
namespace {
  struct Layout {
    std::vector<std::size_t> w_off, b_off;
    std::size_t out_off = 0;
    int max_width = 0;
  };

  Layout make_layout(std::span<const int> widths) {
    Layout l;
    std::size_t off = 0;
    l.w_off.push_back(0);
    l.b_off.push_back(0);
    for (std::size_t h = 1; h < widths.size(); ++h) {
      l.w_off.push_back(off);
      off += static_cast<std::size_t>(widths[h]) * widths[h - 1];
      l.b_off.push_back(off);
      off += widths[h];
    }
    l.out_off = off;
    for (int w: widths)
      l.max_width = std::max(l.max_width, w);
    return l;
  }
}  // namespace

void forward_batch(const NetworkView &net, const BatchInputs &x, double *psi,
                   double *grad, std::size_t grad_stride) {
  const std::span<const int> widths = net.widths;
  const std::size_t depth = widths.size() - 1;
  const Layout l = make_layout(widths);
  const double *th = net.theta;

  // Activations and logistic values for every layer of one tuple.
  std::vector<std::vector<double>> a(depth + 1), sig(depth + 1);
  for (std::size_t h = 0; h <= depth; ++h) {
    a[h].resize(widths[h]);
    sig[h].resize(widths[h]);
  }
  std::vector<double> bar(l.max_width), bar_prev(l.max_width);

  for (std::size_t i = 0; i < x.count; ++i) {
    for (int k = 0; k < widths[0]; ++k)
      a[0][k] = x.data[k * x.stride + i];

    for (std::size_t h = 1; h <= depth; ++h) {
      const double *w = th + l.w_off[h];
      const double *b = th + l.b_off[h];
      const int n = widths[h], m = widths[h - 1];
      for (int r = 0; r < n; ++r) {
        double z = b[r];
        for (int c = 0; c < m; ++c)
          z += w[r * m + c] * a[h - 1][c];
        const Activation act = activate(z);
        a[h][r] = act.sp;
        sig[h][r] = act.sig;
      }
    }

    const double *wo = th + l.out_off;
    double out = 0;
    for (int r = 0; r < widths[depth]; ++r)
      out += wo[r] * a[depth][r];
    psi[i] = out;

    if (grad == nullptr)
      continue;

    for (int r = 0; r < widths[depth]; ++r)
      bar[r] = wo[r];
    for (std::size_t h = depth; h >= 1; --h) {
      const double *w = th + l.w_off[h];
      const int n = widths[h], m = widths[h - 1];
      for (int c = 0; c < m; ++c)
        bar_prev[c] = 0;
      for (int r = 0; r < n; ++r) {
        const double zbar = bar[r] * sig[h][r];
        for (int c = 0; c < m; ++c)
          bar_prev[c] += w[r * m + c] * zbar;
      }
      std::swap(bar, bar_prev);
    }
    for (int k = 0; k < widths[0]; ++k)
      grad[k * grad_stride + i] = bar[k];
  }
}

namespace {
  // Forward-over-reverse pass for one tuple and one input direction,
  // accumulating into out.
  class DualPass {
  public:
    explicit DualPass(std::span<const int> widths)
        : widths_(widths), depth_(widths.size() - 1), l_(make_layout(widths)),
          a_(depth_ + 1), ad_(depth_ + 1), zd_(depth_ + 1), sig_(depth_ + 1),
          dsig_(depth_ + 1), abar_(l_.max_width), adbar_(l_.max_width),
          abar_prev_(l_.max_width), adbar_prev_(l_.max_width) {
      for (std::size_t h = 0; h <= depth_; ++h) {
        a_[h].resize(widths[h]);
        ad_[h].resize(widths[h]);
        zd_[h].resize(widths[h]);
        sig_[h].resize(widths[h]);
        dsig_[h].resize(widths[h]);
      }
    }

    double &input(int k) { return a_[0][k]; }
    double &direction(int k) { return ad_[0][k]; }

    void run(const double *th, double *out) {
      const auto &widths = widths_;
      for (std::size_t h = 1; h <= depth_; ++h) {
        const double *w = th + l_.w_off[h];
        const double *b = th + l_.b_off[h];
        const int n = widths[h], m = widths[h - 1];
        for (int r = 0; r < n; ++r) {
          double z = b[r], zdot = 0;
          for (int c = 0; c < m; ++c) {
            z += w[r * m + c] * a_[h - 1][c];
            zdot += w[r * m + c] * ad_[h - 1][c];
          }
          const Activation act = activate(z);
          a_[h][r] = act.sp;
          sig_[h][r] = act.sig;
          dsig_[h][r] = act.dsig;
          zd_[h][r] = zdot;
          ad_[h][r] = act.sig * zdot;
        }
      }

      // s = W_out . ad_H
      double *gwo = out + l_.out_off;
      const double *wo = th + l_.out_off;
      for (int r = 0; r < widths[depth_]; ++r) {
        gwo[r] += ad_[depth_][r];
        abar_[r] = 0;
        adbar_[r] = wo[r];
      }

      for (std::size_t h = depth_; h >= 1; --h) {
        const double *w = th + l_.w_off[h];
        double *gw = out + l_.w_off[h];
        double *gb = out + l_.b_off[h];
        const int n = widths[h], m = widths[h - 1];
        for (int c = 0; c < m; ++c) {
          abar_prev_[c] = 0;
          adbar_prev_[c] = 0;
        }
        for (int r = 0; r < n; ++r) {
          const double zdbar = adbar_[r] * sig_[h][r];
          const double zbar =
              abar_[r] * sig_[h][r] + adbar_[r] * zd_[h][r] * dsig_[h][r];
          gb[r] += zbar;
          for (int c = 0; c < m; ++c) {
            gw[r * m + c] += zdbar * ad_[h - 1][c] + zbar * a_[h - 1][c];
            adbar_prev_[c] += w[r * m + c] * zdbar;
            abar_prev_[c] += w[r * m + c] * zbar;
          }
        }
        std::swap(abar_, abar_prev_);
        std::swap(adbar_, adbar_prev_);
      }
    }

  private:
    std::span<const int> widths_;
    std::size_t depth_;
    Layout l_;
    std::vector<std::vector<double>> a_, ad_, zd_, sig_, dsig_;
    std::vector<double> abar_, adbar_, abar_prev_, adbar_prev_;
  };
}  // namespace

void dual_backward_batch(const NetworkView &net, const BatchInputs &x,
                         const double *directions, double *theta_grad) {
  DualPass pass(net.widths);
  for (std::size_t i = 0; i < x.count; ++i) {
    for (int k = 0; k < net.widths[0]; ++k) {
      pass.input(k) = x.data[k * x.stride + i];
      pass.direction(k) = directions[k * x.stride + i];
    }
    pass.run(net.theta, theta_grad);
  }
}

void input_gradient_jacobian(const NetworkView &net, const BatchInputs &x,
                             double *rows, std::size_t row_stride) {
  DualPass pass(net.widths);
  const int m = net.widths[0];
  for (std::size_t i = 0; i < x.count; ++i) {
    for (int a = 0; a < m; ++a) {
      double *row = rows + (i * m + a) * row_stride;
      for (int k = 0; k < m; ++k) {
        pass.input(k) = x.data[k * x.stride + i];
        pass.direction(k) = k == a ? 1.0 : 0.0;
      }
      pass.run(net.theta, row);
    }
  }
}

}  // namespace pann::kernels::scalar
