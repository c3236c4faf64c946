#ifndef CPCFIF_KERNELS_HPP
#define CPCFIF_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cpcfif::kernels {

/// Grid-sweep primitives used by the fixed-point and curvature machinery.
/// Every op has a scalar reference implementation plus SIMD variants
/// (AVX2 on x86-64, NEON on aarch64) selected once at runtime.
///
/// Pointwise ops (pullback_sweep, curvature) and max reductions are
/// bit-identical to the scalar reference; sum reductions use lane
/// accumulators and may differ from the scalar result by rounding only.
struct Ops {
  /// f_new[i] = scale[i] * (lerp(f_old; idx[i], w[i]) - sub[i]) + add[i]
  /// with lerp = (1 - w)*f_old[idx] + w*f_old[idx + 1].
  void (*pullback_sweep)(const double* f_old, const std::int32_t* idx,
                         const double* w, const double* scale,
                         const double* sub, const double* add, double* f_new,
                         std::size_t n);

  /// kappa[i] = f2[i] / (1 + f1[i]^2)^(3/2), signed.
  void (*curvature)(const double* f1, const double* f2, double* kappa,
                    std::size_t n);

  /// max_i |a[i] - b[i]|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);

  /// max_i |a[i]|
  double (*max_abs)(const double* a, std::size_t n);

  /// sum_i (a[i] - b[i])^2
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);

  /// sum_i w[i] * (a[i] - b[i])^2
  double (*weighted_sum_sq_diff)(const double* w, const double* a,
                                 const double* b, std::size_t n);
};

/// Runtime-selected variant. Honors CPCFIF_KERNELS=scalar|avx2|neon;
/// an unavailable or unknown request falls back to scalar.
const Ops& active();
std::string_view active_name();

const Ops& scalar_ops();
const Ops* avx2_ops();  ///< nullptr unless compiled in and CPU-supported
const Ops* neon_ops();

}  // namespace cpcfif::kernels

#endif
