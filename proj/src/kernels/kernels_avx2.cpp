#include "cpcfif/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace cpcfif::kernels {
namespace avx2 {

// Lane arithmetic mirrors the scalar reference expression for expression
// order; with contraction disabled the vector lanes are bit-identical to
// the scalar loop.

void pullback_sweep(const double* f_old, const std::int32_t* idx,
                    const double* w, const double* scale, const double* sub,
                    const double* add, double* f_new, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i j = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    const __m256d lo = _mm256_i32gather_pd(f_old, j, 8);
    const __m256d hi = _mm256_i32gather_pd(f_old + 1, j, 8);
    const __m256d wv = _mm256_loadu_pd(w + i);
    const __m256d lerp = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(one, wv), lo),
                                       _mm256_mul_pd(wv, hi));
    const __m256d sc = _mm256_loadu_pd(scale + i);
    const __m256d sb = _mm256_loadu_pd(sub + i);
    const __m256d ad = _mm256_loadu_pd(add + i);
    const __m256d r =
        _mm256_add_pd(_mm256_mul_pd(sc, _mm256_sub_pd(lerp, sb)), ad);
    _mm256_storeu_pd(f_new + i, r);
  }
  for (; i < n; ++i) {
    const std::int32_t j = idx[i];
    const double lerp = (1.0 - w[i]) * f_old[j] + w[i] * f_old[j + 1];
    f_new[i] = scale[i] * (lerp - sub[i]) + add[i];
  }
}

void curvature(const double* f1, const double* f2, double* kappa,
               std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_loadu_pd(f1 + i);
    const __m256d u = _mm256_add_pd(one, _mm256_mul_pd(g, g));
    const __m256d denom = _mm256_mul_pd(u, _mm256_sqrt_pd(u));
    _mm256_storeu_pd(kappa + i, _mm256_div_pd(_mm256_loadu_pd(f2 + i), denom));
  }
  for (; i < n; ++i) {
    const double u = 1.0 + f1[i] * f1[i];
    kappa[i] = f2[i] / (u * std::sqrt(u));
  }
}

namespace {

const __m256d kAbsMask =
    _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
  return _mm_cvtsd_f64(s1);
}

}  // namespace

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, _mm256_and_pd(d, kAbsMask));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(a + i), kAbsMask));
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double weighted_sum_sq_diff(const double* w, const double* a, const double* b,
                            std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(
        acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_mul_pd(d, d)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += w[i] * (d * d);
  }
  return s;
}

}  // namespace avx2

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops = {avx2::pullback_sweep, avx2::curvature,
                          avx2::max_abs_diff,   avx2::max_abs,
                          avx2::sum_sq_diff,    avx2::weighted_sum_sq_diff};
  return &ops;
}

}  // namespace cpcfif::kernels

#else

namespace cpcfif::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace cpcfif::kernels

#endif
