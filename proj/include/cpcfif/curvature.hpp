#ifndef CPCFIF_CURVATURE_HPP
#define CPCFIF_CURVATURE_HPP

#include <vector>

#include "cpcfif/core.hpp"
#include "cpcfif/fif.hpp"

namespace cpcfif {

enum class CurvatureSource {
  analytic_derivative_ifs,
  finite_difference,
  discrete
};

/// Signed curvature kappa = f'' / (1 + f'^2)^(3/2) on a grid.
struct CurvatureProfile {
  Grid grid;
  std::vector<double> kappa;
  CurvatureSource source;
};

CurvatureProfile curvature_of(const SampledCurve& curve);

/// Menger curvature at the interior knots: inverse circumradius of each
/// consecutive point triple, signed by turn direction.
std::vector<double> discrete_curvature(const DataSet& data);

struct DeviationMetrics {
  double max_err;
  double rmse;
  std::vector<double> abs_err;
};

/// max and RMS of |kappa_a - kappa_b|; grids must match.
DeviationMetrics curvature_deviation(const CurvatureProfile& a,
                                     const CurvatureProfile& b);

}  // namespace cpcfif

#endif
