//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "pann/kernels.hpp"
#include "simd_math_avx2.hpp"

namespace pann::kernels::avx2 {
namespace {
  constexpr std::size_t kLanes = 4;

  struct Layout {
    std::vector<std::size_t> w_off, b_off, node_off;
    std::size_t out_off = 0, nodes = 0;
    int max_width = 0;
  };

  Layout make_layout(std::span<const int> widths) {
    Layout l;
    std::size_t off = 0, nodes = 0;
    for (std::size_t h = 0; h < widths.size(); ++h) {
      l.node_off.push_back(nodes);
      nodes += widths[h];
      l.max_width = std::max(l.max_width, widths[h]);
      if (h == 0) {
        l.w_off.push_back(0);
        l.b_off.push_back(0);
        continue;
      }
      l.w_off.push_back(off);
      off += static_cast<std::size_t>(widths[h]) * widths[h - 1];
      l.b_off.push_back(off);
      off += widths[h];
    }
    l.out_off = off;
    l.nodes = nodes;
    return l;
  }

  // Loads four consecutive tuples of component row; the tail repeats the
  // last valid tuple (or zero-fills when pad_zero is set).
  __m256d load_lanes(const double *row, std::size_t i0, std::size_t count,
                     bool pad_zero) {
    if (i0 + kLanes <= count)
      return _mm256_loadu_pd(row + i0);
    alignas(32) double tmp[kLanes];
    for (std::size_t l = 0; l < kLanes; ++l) {
      const std::size_t i = i0 + l;
      if (i < count)
        tmp[l] = row[i];
      else
        tmp[l] = pad_zero ? 0.0 : row[count - 1];
    }
    return _mm256_load_pd(tmp);
  }

  void store_lanes(double *row, std::size_t i0, std::size_t count,
                   __m256d v) {
    if (i0 + kLanes <= count) {
      _mm256_storeu_pd(row + i0, v);
      return;
    }
    alignas(32) double tmp[kLanes];
    _mm256_store_pd(tmp, v);
    for (std::size_t l = 0; i0 + l < count; ++l)
      row[i0 + l] = tmp[l];
  }
}  // namespace

void softplus_logistic(const double *x, double *sp, double *sig,
                       std::size_t n) {
  for (std::size_t i = 0; i + kLanes <= n; i += kLanes) {
    const ActivationV a = activate(_mm256_loadu_pd(x + i));
    _mm256_storeu_pd(sp + i, a.sp);
    _mm256_storeu_pd(sig + i, a.sig);
  }
}

void forward_batch(const NetworkView &net, const BatchInputs &x, double *psi,
                   double *grad, std::size_t grad_stride) {
  const std::span<const int> widths = net.widths;
  const std::size_t depth = widths.size() - 1;
  const Layout l = make_layout(widths);
  const double *th = net.theta;

  std::vector<__m256d> a(l.nodes), sig(l.nodes);
  std::vector<__m256d> bar(l.max_width), bar_prev(l.max_width);

  for (std::size_t i0 = 0; i0 < x.count; i0 += kLanes) {
    for (int k = 0; k < widths[0]; ++k)
      a[k] = load_lanes(x.data + k * x.stride, i0, x.count, false);

    for (std::size_t h = 1; h <= depth; ++h) {
      const double *w = th + l.w_off[h];
      const double *b = th + l.b_off[h];
      const int n = widths[h], m = widths[h - 1];
      const __m256d *in = a.data() + l.node_off[h - 1];
      __m256d *out = a.data() + l.node_off[h];
      __m256d *sg = sig.data() + l.node_off[h];
      for (int r = 0; r < n; ++r) {
        __m256d z = _mm256_set1_pd(b[r]);
        for (int c = 0; c < m; ++c)
          z = _mm256_fmadd_pd(_mm256_set1_pd(w[r * m + c]), in[c], z);
        const ActivationV act = activate(z);
        out[r] = act.sp;
        sg[r] = act.sig;
      }
    }

    const double *wo = th + l.out_off;
    const __m256d *top = a.data() + l.node_off[depth];
    __m256d out = _mm256_setzero_pd();
    for (int r = 0; r < widths[depth]; ++r)
      out = _mm256_fmadd_pd(_mm256_set1_pd(wo[r]), top[r], out);
    store_lanes(psi, i0, x.count, out);

    if (grad == nullptr)
      continue;

    for (int r = 0; r < widths[depth]; ++r)
      bar[r] = _mm256_set1_pd(wo[r]);
    for (std::size_t h = depth; h >= 1; --h) {
      const double *w = th + l.w_off[h];
      const int n = widths[h], m = widths[h - 1];
      const __m256d *sg = sig.data() + l.node_off[h];
      for (int c = 0; c < m; ++c)
        bar_prev[c] = _mm256_setzero_pd();
      for (int r = 0; r < n; ++r) {
        const __m256d zbar = _mm256_mul_pd(bar[r], sg[r]);
        for (int c = 0; c < m; ++c)
          bar_prev[c] =
              _mm256_fmadd_pd(_mm256_set1_pd(w[r * m + c]), zbar, bar_prev[c]);
      }
      std::swap(bar, bar_prev);
    }
    for (int k = 0; k < widths[0]; ++k)
      store_lanes(grad + k * grad_stride, i0, x.count, bar[k]);
  }
}

void dual_backward_batch(const NetworkView &net, const BatchInputs &x,
                         const double *directions, double *theta_grad) {
  const std::span<const int> widths = net.widths;
  const std::size_t depth = widths.size() - 1;
  const Layout l = make_layout(widths);
  const double *th = net.theta;
  const std::size_t n_params = l.out_off + widths[depth];

  std::vector<__m256d> a(l.nodes), ad(l.nodes), zd(l.nodes), sig(l.nodes),
      dsig(l.nodes);
  std::vector<__m256d> abar(l.max_width), adbar(l.max_width),
      abar_prev(l.max_width), adbar_prev(l.max_width);
  std::vector<__m256d> acc(n_params, _mm256_setzero_pd());

  for (std::size_t i0 = 0; i0 < x.count; i0 += kLanes) {
    for (int k = 0; k < widths[0]; ++k) {
      a[k] = load_lanes(x.data + k * x.stride, i0, x.count, false);
      ad[k] = load_lanes(directions + k * x.stride, i0, x.count, true);
    }

    for (std::size_t h = 1; h <= depth; ++h) {
      const double *w = th + l.w_off[h];
      const double *b = th + l.b_off[h];
      const int n = widths[h], m = widths[h - 1];
      const std::size_t pi = l.node_off[h - 1], po = l.node_off[h];
      for (int r = 0; r < n; ++r) {
        __m256d z = _mm256_set1_pd(b[r]);
        __m256d zdot = _mm256_setzero_pd();
        for (int c = 0; c < m; ++c) {
          const __m256d wv = _mm256_set1_pd(w[r * m + c]);
          z = _mm256_fmadd_pd(wv, a[pi + c], z);
          zdot = _mm256_fmadd_pd(wv, ad[pi + c], zdot);
        }
        const ActivationV act = activate(z);
        a[po + r] = act.sp;
        sig[po + r] = act.sig;
        dsig[po + r] = act.dsig;
        zd[po + r] = zdot;
        ad[po + r] = _mm256_mul_pd(act.sig, zdot);
      }
    }

    const double *wo = th + l.out_off;
    const std::size_t top = l.node_off[depth];
    for (int r = 0; r < widths[depth]; ++r) {
      acc[l.out_off + r] = _mm256_add_pd(acc[l.out_off + r], ad[top + r]);
      abar[r] = _mm256_setzero_pd();
      adbar[r] = _mm256_set1_pd(wo[r]);
    }

    for (std::size_t h = depth; h >= 1; --h) {
      const double *w = th + l.w_off[h];
      const int n = widths[h], m = widths[h - 1];
      const std::size_t pi = l.node_off[h - 1], po = l.node_off[h];
      for (int c = 0; c < m; ++c) {
        abar_prev[c] = _mm256_setzero_pd();
        adbar_prev[c] = _mm256_setzero_pd();
      }
      for (int r = 0; r < n; ++r) {
        const __m256d zdbar = _mm256_mul_pd(adbar[r], sig[po + r]);
        const __m256d zbar = _mm256_fmadd_pd(
            abar[r], sig[po + r],
            _mm256_mul_pd(_mm256_mul_pd(adbar[r], zd[po + r]), dsig[po + r]));
        acc[l.b_off[h] + r] = _mm256_add_pd(acc[l.b_off[h] + r], zbar);
        __m256d *gw = acc.data() + l.w_off[h] + r * m;
        for (int c = 0; c < m; ++c) {
          gw[c] = _mm256_fmadd_pd(zdbar, ad[pi + c], gw[c]);
          gw[c] = _mm256_fmadd_pd(zbar, a[pi + c], gw[c]);
          const __m256d wv = _mm256_set1_pd(w[r * m + c]);
          adbar_prev[c] = _mm256_fmadd_pd(wv, zdbar, adbar_prev[c]);
          abar_prev[c] = _mm256_fmadd_pd(wv, zbar, abar_prev[c]);
        }
      }
      std::swap(abar, abar_prev);
      std::swap(adbar, adbar_prev);
    }
  }

  for (std::size_t p = 0; p < n_params; ++p)
    theta_grad[p] += hsum(acc[p]);
}

}  // namespace pann::kernels::avx2
