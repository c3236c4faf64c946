#ifndef CPCFIF_FIF_HPP
#define CPCFIF_FIF_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "cpcfif/core.hpp"
#include "cpcfif/splines.hpp"

namespace cpcfif {

enum class FifVariant { hermite_cubic, curvature_preserving };

/// Base function of the curvature-preserving recursion
///   F(L_s(x)) = lambda_s (F(x) - b(x)) + S(L_s(x)).
///
/// endpoint_quintic matches S, S' and S'' at the global endpoints, which
/// keeps the attractor C^1 for |lambda_s| < a_s and C^2 for
/// |lambda_s| < a_s^2, so the derivative IFS genuinely represents F' / F''.
/// endpoint_chord is the plain two-point chord; it interpolates but the
/// derivative IFS then disagrees with F' at knot images.
/// additive_delta is the additive-correction recursion
///   F(L_s(x)) = lambda_s F(x) + S(x) + (1 - lambda_s)[S(x) - chord_s(x)]
/// with chord_s the local two-point chord of interval s, kept for
/// side-by-side study; it does not interpolate the knots and its build-time
/// knot verification fails loudly unless disabled.
enum class CpBase { endpoint_quintic, endpoint_chord, additive_delta };

enum class DerivativeSource { analytic_derivative_ifs, finite_difference };

/// An IFS whose attractor is the interpolant F: affine maps, scaling vector,
/// the reference spline S, and the variant-specific map components.
class FifModel {
 public:
  FifVariant variant() const { return variant_; }
  CpBase base_kind() const { return base_kind_; }
  const DataSet& data() const { return data_; }
  const AffineMaps& maps() const { return maps_; }
  const ScalingVector& lambda() const { return lambda_; }
  const SplineModel& spline() const { return spline_; }
  bool interpolates() const { return variant_ != FifVariant::curvature_preserving ||
                                     base_kind_ != CpBase::additive_delta; }

  /// Map component F_s(x, u) of the IFS w_s(x, u) = (L_s(x), F_s(x, u)).
  double map_value(std::size_t s, double x, double u) const;

  /// Same, with the image abscissa L_s(x) supplied by the caller (exact
  /// grid/orbit points avoid the L_s round trip).
  double map_value_at_image(std::size_t s, double x, double u,
                            double image_x) const;

  /// Base function b (curvature_preserving only), order 0|1|2.
  double base_value(double x, int order = 0) const;

  /// x-derivative of the non-self-referential map part H_s at x, order m.
  double h_value(std::size_t s, double x, int m) const;

  /// Upper bound for sup |F| from the Bernstein hulls of the map parts.
  double sup_abs_bound() const;

  friend FifModel build_hermite_cubic_fif(const DataSet&, const ScalingVector&,
                                          const std::vector<double>&);
  friend FifModel build_cp_cfif(const DataSet&, const ScalingVector&,
                                const SplineModel&, CpBase, bool);

 private:
  FifModel(FifVariant variant, DataSet data, AffineMaps maps,
           ScalingVector lambda, SplineModel spline)
      : variant_(variant),
        data_(std::move(data)),
        maps_(std::move(maps)),
        lambda_(std::move(lambda)),
        spline_(std::move(spline)) {}

  void verify_endpoint_matching() const;

  FifVariant variant_;
  DataSet data_;
  AffineMaps maps_;
  ScalingVector lambda_;
  SplineModel spline_;
  CpBase base_kind_ = CpBase::endpoint_quintic;
  std::array<double, 6> base_coef_{};        // power basis in tau = (x-x_1)/l
  std::vector<double> U_, V_, W_, X_;        // hermite_cubic, theta basis
};

/// C^1 cubic FIF with theta-basis coefficients
///   U_i = y_i - lambda_i y_1, ..., X_i = y_{i+1} - lambda_i y_M.
/// Requires |lambda_s| < a_s.
FifModel build_hermite_cubic_fif(const DataSet& data,
                                 const ScalingVector& lambda,
                                 const std::vector<double>& d);

/// Curvature-preserving cubic FIF anchored on the reference spline.
/// Requires |lambda_s| < 1. Knot interpolation is verified at build time to
/// 1e-10 unless verify_knots is false (additive_delta study mode).
FifModel build_cp_cfif(const DataSet& data, const ScalingVector& lambda,
                       const SplineModel& spline,
                       CpBase base = CpBase::endpoint_quintic,
                       bool verify_knots = true);

/// Exact attractor ordinates at every image L_{s_1}..L_{s_k}(x_t).
struct AttractorPoints {
  std::vector<double> x, f;
};

/// Default 2^22 points; CPCFIF_POINT_CAP overrides.
std::size_t default_point_cap();

AttractorPoints refine_attractor(const FifModel& model, int depth);
AttractorPoints refine_attractor(const FifModel& model, int depth,
                                 std::size_t point_cap);

/// Pointwise evaluation by inverse-map address decomposition, seeded with S
/// at the terminal pull-back point; |result - F(x)| <= tol.
double eval_fif(const FifModel& model, double x, double tol);

struct SampledCurve {
  Grid grid;
  std::vector<double> f, f1, f2;
  DerivativeSource deriv_source = DerivativeSource::analytic_derivative_ifs;
};

struct FixedPointStats {
  std::size_t iterations = 0;
  std::vector<double> sup_deltas;  ///< successive-iterate sup distances
};

/// Fixed-point iteration of the Read-Bajraktarevic operator on the grid,
/// with linear interpolation for off-grid pull-back reads. Fills f' and f''
/// through the derivative IFS when |lambda_s| < a_s^2 for all s, otherwise
/// by central differences on f (flagged in deriv_source).
SampledCurve eval_fif_grid(const FifModel& model, const Grid& grid, double tol,
                           FixedPointStats* stats = nullptr);

/// Attractor of the derivative IFS {L_s, (lambda_s u + H_s^(m))/a_s^m} on the
/// grid. Requires |lambda_s| < a_s^m.
std::vector<double> derivative_ifs_eval(const FifModel& model, int order,
                                        const Grid& grid, double tol = 1e-12);

}  // namespace cpcfif

#endif
