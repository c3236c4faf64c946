#include "cpcfif/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cpcfif {

DataSet::DataSet(std::vector<double> xs, std::vector<double> us)
    : xs_(std::move(xs)), us_(std::move(us)) {
  if (xs_.size() != us_.size())
    throw std::invalid_argument("DataSet: abscissa/ordinate length mismatch");
  if (xs_.size() < 3)
    throw std::invalid_argument("DataSet: at least 3 knots required");
  for (std::size_t t = 0; t < xs_.size(); ++t) {
    if (!std::isfinite(xs_[t]) || !std::isfinite(us_[t]))
      throw std::invalid_argument("DataSet: non-finite knot");
    if (t > 0 && !(xs_[t - 1] < xs_[t]))
      throw std::invalid_argument(
          "DataSet: abscissae must be strictly increasing (knot " +
          std::to_string(t) + ")");
  }
}

AffineMaps build_affine_maps(const DataSet& data) {
  const double span = data.span();
  const double x1 = data.x_min();
  std::vector<double> a(data.intervals()), b(data.intervals());
  for (std::size_t s = 0; s < data.intervals(); ++s) {
    a[s] = (data.x(s + 1) - data.x(s)) / span;
    b[s] = data.x(s) - a[s] * x1;
  }
  return AffineMaps(std::move(a), std::move(b));
}

std::size_t locate_interval(const DataSet& data, double x) {
  const auto& xs = data.xs();
  if (!(x >= xs.front()) || !(x <= xs.back()))
    throw std::domain_error("locate_interval: x outside [x_1, x_M]");
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t s = static_cast<std::size_t>(it - xs.begin());
  s = s == 0 ? 0 : s - 1;
  return std::min(s, data.intervals() - 1);
}

ScalingVector::ScalingVector(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v) || std::fabs(v) >= 1.0)
      throw std::domain_error("ScalingVector: |lambda_s| < 1 required");
  }
}

ScalingVector::ScalingVector(std::vector<double> values,
                             std::vector<double> bounds)
    : ScalingVector(std::move(values)) {
  if (bounds.size() != values_.size())
    throw std::invalid_argument("ScalingVector: bounds length mismatch");
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (!(bounds[s] > 0.0) || bounds[s] >= 1.0)
      throw std::domain_error("ScalingVector: bounds must lie in (0, 1)");
    if (std::fabs(values_[s]) > bounds[s])
      throw std::domain_error("ScalingVector: |lambda_s| exceeds its bound");
  }
  bounds_ = std::move(bounds);
}

ScalingVector ScalingVector::uniform(double value, std::size_t count) {
  return ScalingVector(std::vector<double>(count, value));
}

ScalingVector ScalingVector::zeros(std::size_t count) {
  return uniform(0.0, count);
}

double ScalingVector::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

Grid::Grid(double x0, double x1, std::size_t n) : x0_(x0), x1_(x1), n_(n) {
  if (n < 2) throw std::invalid_argument("Grid: n >= 2 required");
  if (!(x0 < x1)) throw std::invalid_argument("Grid: x0 < x1 required");
  h_ = (x1 - x0) / static_cast<double>(n - 1);
}

std::vector<double> Grid::points() const {
  std::vector<double> p(n_);
  for (std::size_t i = 0; i < n_; ++i) p[i] = point(i);
  return p;
}

}  // namespace cpcfif
