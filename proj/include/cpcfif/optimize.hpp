#ifndef CPCFIF_OPTIMIZE_HPP
#define CPCFIF_OPTIMIZE_HPP

#include <cstddef>
#include <vector>

#include "cpcfif/core.hpp"
#include "cpcfif/fif.hpp"
#include "cpcfif/splines.hpp"

namespace cpcfif {

enum class QuadratureRule { trapezoid, simpson };

struct PenaltyConfig {
  std::size_t quad_n = 1001;                      ///< >= 65; odd for simpson
  QuadratureRule rule = QuadratureRule::simpson;
  std::vector<double> bounds;                     ///< per-interval box, (0,1)
  double tol = 1e-6;                              ///< sweep improvement tol
  std::size_t max_sweeps = 200;
  double lambda_min = 0.0;                        ///< magnitude floor, >= 0
  double fif_tol = 1e-10;                         ///< fixed-point tolerance
  CpBase base = CpBase::endpoint_quintic;

  void validate(std::size_t intervals) const;
};

struct PenaltyResult {
  ScalingVector lambda;
  double J;
  std::size_t sweeps;
  bool converged;
  std::vector<double> bounds;
  std::vector<double> sweep_J;  ///< J after each full sweep
};

struct ScalingBounds {
  std::vector<double> beta;  ///< per interval: min{a_s, term_mid, term_sup}
  double beta_tight;         ///< eps (1 + K^2)^(3/2) / C
  double K, C;
  double term_mid;  ///< 3C / (eps (1 + K^2)^(3/2)), as stated
  double term_sup;  ///< eps (1 + K^2)^(3/2) / ||F''||_inf
};

/// Admissible scaling bounds from the curvature-tolerance analysis.
/// K and C are sup norms of the spline; sup_grid_n = 0 samples the knots
/// only (reproduces the reported bound values, whose C equals the knot
/// extremum of the natural spline exactly), any n >= 2 uses a uniform
/// n-point grid plus knot one-sided values. C = 0 disables the curvature
/// terms and leaves bound = min(a_s, 1^-).
ScalingBounds curvature_scaling_bounds(const DataSet& data, const SplineModel& spline,
                               double epsilon, double f2_sup_estimate,
                               std::size_t sup_grid_n = 0);

/// J(lambda) = integral of (kappa_F - kappa_S)^2 over [x_1, x_M], computed on
/// the quadrature grid with the configured rule. Deterministic for a fixed
/// config.
double penalty_J(const ScalingVector& lambda, const DataSet& data,
                 const SplineModel& spline, const PenaltyConfig& config);

/// Cyclic coordinate descent with per-coordinate golden-section search over
/// [max(-beta_s, -0.999), min(beta_s, 0.999)], split into two sign branches
/// when a lambda_min floor is set. The sweep J sequence is non-increasing.
PenaltyResult minimize_penalty(const DataSet& data, const SplineModel& spline,
                               const PenaltyConfig& config,
                               const ScalingVector& lambda_init);

}  // namespace cpcfif

#endif
