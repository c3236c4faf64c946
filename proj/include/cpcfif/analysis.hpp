#ifndef CPCFIF_ANALYSIS_HPP
#define CPCFIF_ANALYSIS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cpcfif/core.hpp"
#include "cpcfif/curvature.hpp"
#include "cpcfif/fif.hpp"
#include "cpcfif/splines.hpp"

namespace cpcfif {

enum class CanonicalId { low_curvature, high_curvature, noisy_sine };

CanonicalId canonical_id_from_string(const std::string& name);
std::string to_string(CanonicalId id);

/// Standard normals from a portable, named pipeline: MT19937 (init_genrand
/// seeding, as std::mt19937), 53-bit uniforms u = ((a>>5)*2^26 + (b>>6))/2^53
/// from consecutive 32-bit draws, and the Box-Muller transform
///   z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2)
/// with u1 = 0 clamped to 2^-53. Bit-reproducible for a fixed seed.
std::vector<double> seeded_normals(std::uint32_t seed, std::size_t count);

/// The three test datasets. low_curvature and high_curvature are fixed
/// five-point sets; noisy_sine is sin(x) + sigma * z_i on a uniform n-point
/// grid over [0, 2 pi] with z from seeded_normals.
DataSet canonical_dataset(CanonicalId id, std::uint32_t seed = 42,
                          std::size_t n = 9, double sigma = 0.1);

struct ExperimentReport {
  std::string dataset;
  std::vector<double> lambda;
  double rmse = 0.0;                 ///< RMSE of F - S over the grid
  double max_curvature_error = 0.0;  ///< max |kappa_F - kappa_S|
  std::size_t grid_n = 0;
  std::uint32_t seed = 0;
  DerivativeScheme scheme = DerivativeScheme::natural_spline;
  DerivativeSource deriv_source = DerivativeSource::analytic_derivative_ifs;
};

ExperimentReport rmse_report(const DataSet& data, const ScalingVector& lambda,
                             const Grid& grid,
                             DerivativeScheme scheme =
                                 DerivativeScheme::natural_spline,
                             CpBase base = CpBase::endpoint_quintic);

struct StabilityRow {
  double delta;      ///< perturbation applied to every component
  double deviation;  ///< max |kappa_perturbed - kappa_base| over the grid
};

struct StabilityTable {
  std::vector<StabilityRow> rows;
  double c1_fit;  ///< least-squares slope through origin on two smallest
};

/// Perturbs every scaling component by +delta (clamped below 1) and records
/// the curvature sup-deviation against the base model. One curvature path is
/// used for the whole sweep so rows are comparable.
StabilityTable stability_sweep(const DataSet& data,
                               const ScalingVector& lambda_base,
                               std::span<const double> deltas,
                               std::size_t grid_n = 4097);

struct SensitivityCurve {
  double lambda;
  std::vector<double> f1;
  double sup_dev_from_spline;  ///< ||F'_lambda - S'||_inf
};

struct SensitivityResult {
  Grid grid;
  std::vector<SensitivityCurve> curves;
  bool monotone_in_lambda;
};

/// F' per scalar lambda on a shared grid (derivative IFS; every lambda must
/// satisfy lambda < min a_s).
SensitivityResult sensitivity_sweep(const DataSet& data,
                                    std::span<const double> lambdas,
                                    std::size_t grid_n = 4097);

struct TimingCell {
  std::string method;
  std::size_t points;
  double median_seconds;
};

struct TimingTable {
  std::vector<TimingCell> cells;
  std::vector<std::size_t> counts;
  double fif_over_cubic_min = 0.0;
  double fif_over_cubic_max = 0.0;
};

/// Median wall-clock of build + n-point evaluation per method. Absolute
/// numbers are machine-dependent and reported, not asserted.
TimingTable timing_bench(const DataSet& data,
                         std::span<const std::size_t> counts,
                         std::size_t repetitions);

}  // namespace cpcfif

#endif
