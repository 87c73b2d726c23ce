//
// pann - physics-augmented neural network hyperelasticity
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <immintrin.h>

namespace pann::kernels::avx2 {

/// exp(x) for x <= 0. Cody-Waite reduction and the Cephes Pade form; lanes
/// below the double underflow threshold return 0.
inline __m256d exp_nonpositive(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125E-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212E-6);
  const __m256d underflow = _mm256_set1_pd(-708.39);

  const __m256d dead = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
  x = _mm256_max_pd(x, underflow);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                    _MM_FROUND_TO_NEAREST_INT
                                        | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, c1, x);
  r = _mm256_fnmadd_pd(n, c2, r);

  const __m256d r2 = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d er = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  er = _mm256_fmadd_pd(er, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  // 2^n through the exponent field; n is integral and within [-1022, 0].
  const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
  const __m256i ni = _mm256_sub_epi64(
      _mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  const __m256d result = _mm256_mul_pd(er, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(dead, result);
}

/// log(1 + e) for 0 <= e <= 1 via 2 atanh(e / (2 + e)).
inline __m256d log1p_unit(__m256d e) {
  const __m256d s = _mm256_div_pd(e, _mm256_add_pd(_mm256_set1_pd(2.0), e));
  const __m256d s2 = _mm256_mul_pd(s, s);
  // sum_{k=0}^{16} s^{2k} / (2k + 1); s^2 <= 1/9 so the tail is below 2^-56.
  __m256d p = _mm256_set1_pd(1.0 / 33.0);
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 31.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 29.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 27.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 25.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 23.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0 / 3.0));
  p = _mm256_fmadd_pd(p, s2, _mm256_set1_pd(1.0));
  return _mm256_mul_pd(_mm256_add_pd(s, s), p);
}

struct ActivationV {
  __m256d sp, sig, dsig;
};

inline ActivationV activate(__m256d z) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d neg_abs = _mm256_or_pd(z, sign);
  const __m256d e = exp_nonpositive(neg_abs);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(one, e));
  const __m256d ei = _mm256_mul_pd(e, inv);
  const __m256d nonneg = _mm256_cmp_pd(z, _mm256_setzero_pd(), _CMP_GE_OQ);
  ActivationV a;
  a.sp = _mm256_add_pd(_mm256_max_pd(z, _mm256_setzero_pd()), log1p_unit(e));
  a.sig = _mm256_blendv_pd(ei, inv, nonneg);
  a.dsig = _mm256_mul_pd(ei, inv);
  return a;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace pann::kernels::avx2
