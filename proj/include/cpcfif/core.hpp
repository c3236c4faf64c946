#ifndef CPCFIF_CORE_HPP
#define CPCFIF_CORE_HPP

#include <cstddef>
#include <vector>

namespace cpcfif {

/// Interpolation problem instance: strictly increasing knots with ordinates.
/// Immutable after construction; at least three knots (two subintervals).
class DataSet {
 public:
  DataSet(std::vector<double> xs, std::vector<double> us);

  std::size_t size() const { return xs_.size(); }
  std::size_t intervals() const { return xs_.size() - 1; }
  double x(std::size_t t) const { return xs_[t]; }
  double u(std::size_t t) const { return us_[t]; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& us() const { return us_; }
  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  double span() const { return xs_.back() - xs_.front(); }

 private:
  std::vector<double> xs_, us_;
};

/// Per-subinterval affine contractions L_s(x) = a_s x + b_s mapping the whole
/// domain [x_1, x_M] onto [x_s, x_{s+1}].
class AffineMaps {
 public:
  AffineMaps(std::vector<double> a, std::vector<double> b)
      : a_(std::move(a)), b_(std::move(b)) {}

  std::size_t count() const { return a_.size(); }
  double a(std::size_t s) const { return a_[s]; }
  double b(std::size_t s) const { return b_[s]; }
  const std::vector<double>& as() const { return a_; }

  double apply(std::size_t s, double x) const { return a_[s] * x + b_[s]; }
  double invert(std::size_t s, double y) const { return (y - b_[s]) / a_[s]; }

 private:
  std::vector<double> a_, b_;
};

AffineMaps build_affine_maps(const DataSet& data);

/// Index s with x_s <= x <= x_{s+1}, zero-based. Interior knots belong to the
/// interval starting at them (left-closed); x_M belongs to the last interval.
/// Throws std::domain_error outside [x_1, x_M].
std::size_t locate_interval(const DataSet& data, double x);

/// Vertical scaling factors, one per subinterval, each |lambda_s| < 1, with an
/// optional per-entry magnitude bound.
class ScalingVector {
 public:
  explicit ScalingVector(std::vector<double> values);
  ScalingVector(std::vector<double> values, std::vector<double> bounds);
  static ScalingVector uniform(double value, std::size_t count);
  static ScalingVector zeros(std::size_t count);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t s) const { return values_[s]; }
  const std::vector<double>& values() const { return values_; }
  bool has_bounds() const { return !bounds_.empty(); }
  const std::vector<double>& bounds() const { return bounds_; }
  double max_abs() const;

 private:
  std::vector<double> values_, bounds_;
};

/// Uniform evaluation grid covering [x0, x1] inclusive of both endpoints.
class Grid {
 public:
  Grid(double x0, double x1, std::size_t n);

  std::size_t size() const { return n_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double spacing() const { return h_; }
  double point(std::size_t i) const {
    return i + 1 == n_ ? x1_ : x0_ + static_cast<double>(i) * h_;
  }
  std::vector<double> points() const;

 private:
  double x0_, x1_, h_;
  std::size_t n_;
};

}  // namespace cpcfif

#endif
