#include <immintrin.h>

#include <cmath>

#include "dmin/kernels.hpp"

namespace dmin::kernels::avx2 {

namespace {

inline __m256d set1(double x) { return _mm256_set1_pd(x); }

// exp with Cephes range reduction and rational approximation; input clamped to +-700.
inline __m256d exp_pd(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(x, set1(-700.0)), set1(700.0));
  const __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, set1(1.4426950408889634073599), set1(0.5)));
  x = _mm256_fnmadd_pd(n, set1(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(n, set1(1.42860682030941723212E-6), x);
  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = set1(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, xx, set1(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, xx, set1(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = set1(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, xx, set1(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, xx, set1(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, xx, set1(2.00000000000000000009E0));
  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(r, set1(2.0), set1(1.0));
  // 2^n through the exponent field; n + 1.5*2^52 exposes n in the low mantissa bits.
  const __m256d magic = set1(6755399441055744.0);
  const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(r, _mm256_castsi256_pd(bits));
}

// atan for non-negative arguments (Cephes reduction to |x| <= 0.66).
inline __m256d atan_pos_pd(__m256d x) {
  const __m256d big = _mm256_cmp_pd(x, set1(2.41421356237309504880), _CMP_GT_OQ);
  const __m256d mid = _mm256_andnot_pd(big, _mm256_cmp_pd(x, set1(0.66), _CMP_GT_OQ));
  const __m256d xb = _mm256_div_pd(set1(-1.0), x);
  const __m256d xm = _mm256_div_pd(_mm256_sub_pd(x, set1(1.0)), _mm256_add_pd(x, set1(1.0)));
  __m256d xr = _mm256_blendv_pd(x, xm, mid);
  xr = _mm256_blendv_pd(xr, xb, big);
  __m256d y = _mm256_and_pd(mid, set1(0.78539816339744830962));
  y = _mm256_blendv_pd(y, set1(1.57079632679489661923), big);
  __m256d extra = _mm256_and_pd(mid, set1(0.5 * 6.123233995736765886130E-17));
  extra = _mm256_blendv_pd(extra, set1(6.123233995736765886130E-17), big);

  const __m256d z = _mm256_mul_pd(xr, xr);
  __m256d p = set1(-8.750608600031904122785E-1);
  p = _mm256_fmadd_pd(p, z, set1(-1.615753718733365076637E1));
  p = _mm256_fmadd_pd(p, z, set1(-7.500855792314704667340E1));
  p = _mm256_fmadd_pd(p, z, set1(-1.228866684490136173410E2));
  p = _mm256_fmadd_pd(p, z, set1(-6.485021904942025371773E1));
  __m256d q = _mm256_add_pd(z, set1(2.485846490142306297962E1));
  q = _mm256_fmadd_pd(q, z, set1(1.650270098316988542046E2));
  q = _mm256_fmadd_pd(q, z, set1(4.328810604912902668951E2));
  q = _mm256_fmadd_pd(q, z, set1(4.853903996359136964868E2));
  q = _mm256_fmadd_pd(q, z, set1(1.945506571482613964425E2));
  __m256d r = _mm256_div_pd(_mm256_mul_pd(z, p), q);
  r = _mm256_fmadd_pd(xr, r, xr);
  return _mm256_add_pd(y, _mm256_add_pd(r, extra));
}

}  // namespace

void pair_terms(const double* d, const double* s, double* a, double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(a + i, atan_pos_pd(exp_pd(_mm256_loadu_pd(d + i))));
    _mm256_storeu_pd(b + i, atan_pos_pd(exp_pd(_mm256_loadu_pd(s + i))));
  }
  if (i < n) scalar::pair_terms(d + i, s + i, a + i, b + i, n - i);
}

void pair_sech(const double* x, double* w, std::size_t n) {
  const __m256d sign = set1(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d neg_abs = _mm256_or_pd(_mm256_loadu_pd(x + i), sign);
    const __m256d t = exp_pd(neg_abs);
    const __m256d den = _mm256_fmadd_pd(t, t, set1(1.0));
    _mm256_storeu_pd(w + i, _mm256_div_pd(_mm256_add_pd(t, t), den));
  }
  if (i < n) scalar::pair_sech(x + i, w + i, n - i);
}

}  // namespace dmin::kernels::avx2
