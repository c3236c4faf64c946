#include "cpcfif/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace cpcfif::kernels {
namespace neon {

void pullback_sweep(const double* f_old, const std::int32_t* idx,
                    const double* w, const double* scale, const double* sub,
                    const double* add, double* f_new, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t lo = vsetq_lane_f64(f_old[idx[i]], vdupq_n_f64(0.0), 0);
    lo = vsetq_lane_f64(f_old[idx[i + 1]], lo, 1);
    float64x2_t hi = vsetq_lane_f64(f_old[idx[i] + 1], vdupq_n_f64(0.0), 0);
    hi = vsetq_lane_f64(f_old[idx[i + 1] + 1], hi, 1);
    const float64x2_t wv = vld1q_f64(w + i);
    const float64x2_t lerp =
        vaddq_f64(vmulq_f64(vsubq_f64(one, wv), lo), vmulq_f64(wv, hi));
    const float64x2_t r = vaddq_f64(
        vmulq_f64(vld1q_f64(scale + i), vsubq_f64(lerp, vld1q_f64(sub + i))),
        vld1q_f64(add + i));
    vst1q_f64(f_new + i, r);
  }
  for (; i < n; ++i) {
    const std::int32_t j = idx[i];
    const double lerp = (1.0 - w[i]) * f_old[j] + w[i] * f_old[j + 1];
    f_new[i] = scale[i] * (lerp - sub[i]) + add[i];
  }
}

void curvature(const double* f1, const double* f2, double* kappa,
               std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t g = vld1q_f64(f1 + i);
    const float64x2_t u = vaddq_f64(one, vmulq_f64(g, g));
    const float64x2_t denom = vmulq_f64(u, vsqrtq_f64(u));
    vst1q_f64(kappa + i, vdivq_f64(vld1q_f64(f2 + i), denom));
  }
  for (; i < n; ++i) {
    const double u = 1.0 + f1[i] * f1[i];
    kappa[i] = f2[i] / (u * std::sqrt(u));
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vmaxq_f64(acc, vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i))));
  double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
  double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double weighted_sum_sq_diff(const double* w, const double* a, const double* b,
                            std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(w + i), vmulq_f64(d, d)));
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += w[i] * (d * d);
  }
  return s;
}

}  // namespace neon

const Ops* neon_ops() {
  static const Ops ops = {neon::pullback_sweep, neon::curvature,
                          neon::max_abs_diff,   neon::max_abs,
                          neon::sum_sq_diff,    neon::weighted_sum_sq_diff};
  return &ops;
}

}  // namespace cpcfif::kernels

#else

namespace cpcfif::kernels {
const Ops* neon_ops() { return nullptr; }
}  // namespace cpcfif::kernels

#endif
