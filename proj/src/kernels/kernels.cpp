#include "cpcfif/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace cpcfif::kernels {

namespace scalar {

void pullback_sweep(const double* f_old, const std::int32_t* idx,
                    const double* w, const double* scale, const double* sub,
                    const double* add, double* f_new, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t j = idx[i];
    const double lerp = (1.0 - w[i]) * f_old[j] + w[i] * f_old[j + 1];
    f_new[i] = scale[i] * (lerp - sub[i]) + add[i];
  }
}

void curvature(const double* f1, const double* f2, double* kappa,
               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 1.0 + f1[i] * f1[i];
    kappa[i] = f2[i] / (u * std::sqrt(u));
  }
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double weighted_sum_sq_diff(const double* w, const double* a, const double* b,
                            std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += w[i] * (d * d);
  }
  return s;
}

}  // namespace scalar

const Ops& scalar_ops() {
  static const Ops ops = {scalar::pullback_sweep, scalar::curvature,
                          scalar::max_abs_diff,   scalar::max_abs,
                          scalar::sum_sq_diff,    scalar::weighted_sum_sq_diff};
  return ops;
}

#if !defined(CPCFIF_HAVE_AVX2_TU)
const Ops* avx2_ops() { return nullptr; }
#endif
#if !defined(CPCFIF_HAVE_NEON_TU)
const Ops* neon_ops() { return nullptr; }
#endif

namespace {

struct Selected {
  const Ops* ops;
  std::string_view name;
};

Selected select() {
  const char* env = std::getenv("CPCFIF_KERNELS");
  const std::string want = env ? env : "";
  if (want == "scalar") return {&scalar_ops(), "scalar"};
  if (want == "avx2") {
    if (const Ops* v = avx2_ops()) return {v, "avx2"};
    return {&scalar_ops(), "scalar"};
  }
  if (want == "neon") {
    if (const Ops* v = neon_ops()) return {v, "neon"};
    return {&scalar_ops(), "scalar"};
  }
  if (const Ops* v = avx2_ops()) return {v, "avx2"};
  if (const Ops* v = neon_ops()) return {v, "neon"};
  return {&scalar_ops(), "scalar"};
}

const Selected& selected() {
  static const Selected s = select();
  return s;
}

}  // namespace

const Ops& active() { return *selected().ops; }
std::string_view active_name() { return selected().name; }

}  // namespace cpcfif::kernels
