#include "cpcfif/splines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpcfif {

namespace {

std::vector<double> natural_spline_derivatives(const DataSet& data) {
  const std::size_t n = data.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = data.x(i + 1) - data.x(i);
    delta[i] = (data.u(i + 1) - data.u(i)) / h[i];
  }
  // Tridiagonal system for knot second derivatives, natural ends.
  std::vector<double> diag(n, 1.0), sup(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * (delta[i] - delta[i - 1]);
  }
  std::vector<double> sub(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) sub[i] = h[i - 1];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> sigma(n);
  sigma[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;)
    sigma[i] = (rhs[i] - sup[i] * sigma[i + 1]) / diag[i];

  std::vector<double> d(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d[i] = delta[i] - h[i] * (2.0 * sigma[i] + sigma[i + 1]) / 6.0;
  d[n - 1] = delta[n - 2] +
             h[n - 2] * (2.0 * sigma[n - 1] + sigma[n - 2]) / 6.0;
  return d;
}

std::vector<double> three_point_derivatives(const DataSet& data) {
  const std::size_t n = data.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = data.x(i + 1) - data.x(i);
    delta[i] = (data.u(i + 1) - data.u(i)) / h[i];
  }
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (h[i] * delta[i - 1] + h[i - 1] * delta[i]) / (h[i - 1] + h[i]);
  // derivative of the one-sided quadratic fit at each end
  d[0] = ((2.0 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
  d[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * delta[n - 2] -
              h[n - 2] * delta[n - 3]) /
             (h[n - 2] + h[n - 3]);
  return d;
}

}  // namespace

std::vector<double> estimate_derivatives(const DataSet& data,
                                         DerivativeScheme scheme) {
  return scheme == DerivativeScheme::natural_spline
             ? natural_spline_derivatives(data)
             : three_point_derivatives(data);
}

SplineModel::SplineModel(DataSet data, std::vector<double> d)
    : data_(std::move(data)), d_(std::move(d)) {
  if (d_.size() != data_.size())
    throw std::invalid_argument("SplineModel: derivative length mismatch");
  const std::size_t m = data_.intervals();
  U_.resize(m);
  V_.resize(m);
  W_.resize(m);
  X_.resize(m);
  for (std::size_t s = 0; s < m; ++s) {
    const double h = data_.x(s + 1) - data_.x(s);
    U_[s] = data_.u(s);
    V_[s] = 3.0 * data_.u(s) + h * d_[s];
    W_[s] = 3.0 * data_.u(s + 1) - h * d_[s + 1];
    X_[s] = data_.u(s + 1);
  }
}

double SplineModel::eval_in_interval(std::size_t s, double x, int order) const {
  const double h = data_.x(s + 1) - data_.x(s);
  const double z = (x - data_.x(s)) / h;
  const double om = 1.0 - z;
  const double U = U_[s], V = V_[s], W = W_[s], X = X_[s];
  switch (order) {
    case 0:
      return U * om * om * om + V * z * om * om + W * z * z * om +
             X * z * z * z;
    case 1:
      return (-3.0 * U * om * om + V * om * (1.0 - 3.0 * z) +
              W * z * (2.0 - 3.0 * z) + 3.0 * X * z * z) /
             h;
    case 2:
      return (6.0 * U * om + V * (6.0 * z - 4.0) + W * (2.0 - 6.0 * z) +
              6.0 * X * z) /
             (h * h);
    default:
      throw std::invalid_argument("eval_spline: order must be 0, 1 or 2");
  }
}

double SplineModel::eval(double x, int order) const {
  return eval_in_interval(locate_interval(data_, x), x, order);
}

double SplineModel::sup_bound() const {
  double m = 0.0;
  for (std::size_t s = 0; s < U_.size(); ++s) {
    m = std::max({m, std::fabs(U_[s]), std::fabs(V_[s]) / 3.0,
                  std::fabs(W_[s]) / 3.0, std::fabs(X_[s])});
  }
  return m;
}

SplineModel build_spline(const DataSet& data, const std::vector<double>& d) {
  return SplineModel(data, d);
}

double eval_spline(const SplineModel& model, double x, int order) {
  return model.eval(x, order);
}

SupNorms sup_norms(const SplineModel& model, const Grid& grid) {
  double K = 0.0, C = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    K = std::max(K, std::fabs(model.eval(x, 1)));
    C = std::max(C, std::fabs(model.eval(x, 2)));
  }
  const DataSet& data = model.data();
  for (std::size_t t = 0; t < data.size(); ++t) {
    K = std::max(K, std::fabs(model.derivatives()[t]));
    if (t > 0)
      C = std::max(C, std::fabs(model.eval_in_interval(t - 1, data.x(t), 2)));
    if (t + 1 < data.size())
      C = std::max(C, std::fabs(model.eval_in_interval(t, data.x(t), 2)));
  }
  return {K, C};
}

BaselineInterpolant::BaselineInterpolant(DataSet data, BaselineKind kind)
    : data_(std::move(data)), kind_(kind) {
  if (kind_ != BaselineKind::pchip) return;
  const std::size_t n = data_.size();
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = data_.x(i + 1) - data_.x(i);
    delta[i] = (data_.u(i + 1) - data_.u(i)) / h[i];
  }
  d_.assign(n, 0.0);
  // Fritsch-Carlson: weighted harmonic mean at interior knots where the
  // adjacent secants agree in sign, zero otherwise.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  auto end_slope = [](double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0)
      d = 0.0;
    else if (del0 * del1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(del0))
      d = 3.0 * del0;
    return d;
  };
  d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double BaselineInterpolant::eval(double x) const {
  const std::size_t s = locate_interval(data_, x);
  const double h = data_.x(s + 1) - data_.x(s);
  const double z = (x - data_.x(s)) / h;
  if (kind_ == BaselineKind::linear)
    return (1.0 - z) * data_.u(s) + z * data_.u(s + 1);
  const double om = 1.0 - z;
  const double U = data_.u(s);
  const double V = 3.0 * data_.u(s) + h * d_[s];
  const double W = 3.0 * data_.u(s + 1) - h * d_[s + 1];
  const double X = data_.u(s + 1);
  return U * om * om * om + V * z * om * om + W * z * z * om + X * z * z * z;
}

BaselineInterpolant build_baseline(const DataSet& data, BaselineKind kind) {
  return BaselineInterpolant(data, kind);
}

double eval_baseline(const BaselineInterpolant& b, double x) {
  return b.eval(x);
}

}  // namespace cpcfif
