#include "cpcfif/curvature.hpp"

#include <cmath>
#include <stdexcept>

#include "cpcfif/kernels.hpp"

namespace cpcfif {

CurvatureProfile curvature_of(const SampledCurve& curve) {
  if (curve.f1.size() != curve.f.size() || curve.f2.size() != curve.f.size())
    throw std::invalid_argument("curvature_of: derivative arrays missing");
  CurvatureProfile profile{curve.grid, std::vector<double>(curve.f.size()),
                           curve.deriv_source ==
                                   DerivativeSource::analytic_derivative_ifs
                               ? CurvatureSource::analytic_derivative_ifs
                               : CurvatureSource::finite_difference};
  kernels::active().curvature(curve.f1.data(), curve.f2.data(),
                              profile.kappa.data(), curve.f.size());
  return profile;
}

std::vector<double> discrete_curvature(const DataSet& data) {
  std::vector<double> kappa(data.size() - 2);
  for (std::size_t t = 1; t + 1 < data.size(); ++t) {
    const double ax = data.x(t) - data.x(t - 1), ay = data.u(t) - data.u(t - 1);
    const double bx = data.x(t + 1) - data.x(t), by = data.u(t + 1) - data.u(t);
    const double cx = data.x(t + 1) - data.x(t - 1),
                 cy = data.u(t + 1) - data.u(t - 1);
    const double cross = ax * by - ay * bx;
    const double denom = std::sqrt((ax * ax + ay * ay) * (bx * bx + by * by) *
                                   (cx * cx + cy * cy));
    kappa[t - 1] = 2.0 * cross / denom;
  }
  return kappa;
}

DeviationMetrics curvature_deviation(const CurvatureProfile& a,
                                     const CurvatureProfile& b) {
  if (a.kappa.size() != b.kappa.size() || a.grid.x0() != b.grid.x0() ||
      a.grid.x1() != b.grid.x1())
    throw std::invalid_argument("curvature_deviation: grid mismatch");
  const std::size_t n = a.kappa.size();
  DeviationMetrics m;
  m.abs_err.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    m.abs_err[i] = std::fabs(a.kappa[i] - b.kappa[i]);
  const auto& ops = kernels::active();
  m.max_err = ops.max_abs(m.abs_err.data(), n);
  m.rmse = std::sqrt(ops.sum_sq_diff(a.kappa.data(), b.kappa.data(), n) /
                     static_cast<double>(n));
  return m;
}

}  // namespace cpcfif
