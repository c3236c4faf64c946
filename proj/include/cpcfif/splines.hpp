#ifndef CPCFIF_SPLINES_HPP
#define CPCFIF_SPLINES_HPP

#include <vector>

#include "cpcfif/core.hpp"

namespace cpcfif {

enum class DerivativeScheme { natural_spline, three_point };

/// Knot derivatives d_t. three_point uses the non-uniform three-point
/// weighted difference at interior knots and one-sided quadratic fits at the
/// ends; natural_spline solves the tridiagonal system with S''(x_1) =
/// S''(x_M) = 0.
std::vector<double> estimate_derivatives(const DataSet& data,
                                         DerivativeScheme scheme);

/// Piecewise cubic Hermite interpolant in the local parameter
/// z = (x - x_s)/(x_{s+1} - x_s):
///   S = U (1-z)^3 + V z (1-z)^2 + W z^2 (1-z) + X z^3
/// with U = y_s, V = 3 y_s + h_s d_s, W = 3 y_{s+1} - h_s d_{s+1},
/// X = y_{s+1}.
class SplineModel {
 public:
  SplineModel(DataSet data, std::vector<double> d);

  const DataSet& data() const { return data_; }
  const std::vector<double>& derivatives() const { return d_; }

  /// order 0|1|2. At interior knots the second derivative takes the value of
  /// the interval the knot starts (left-closed convention).
  double eval(double x, int order = 0) const;

  /// One-sided evaluation from a specific interval; x may be either endpoint.
  double eval_in_interval(std::size_t s, double x, int order) const;

  struct Coefficients {
    double U, V, W, X;
  };
  Coefficients coefficients(std::size_t s) const {
    return {U_[s], V_[s], W_[s], X_[s]};
  }

  /// Upper bound for sup |S| via the Bernstein control-point hull.
  double sup_bound() const;

 private:
  DataSet data_;
  std::vector<double> d_;
  std::vector<double> U_, V_, W_, X_;
};

SplineModel build_spline(const DataSet& data, const std::vector<double>& d);
double eval_spline(const SplineModel& model, double x, int order = 0);

struct SupNorms {
  double K;  ///< max |S'|
  double C;  ///< max |S''|
};

/// Maxima of |S'| and |S''| over the grid points plus all one-sided knot
/// values.
SupNorms sup_norms(const SplineModel& model, const Grid& grid);

enum class BaselineKind { linear, pchip };

/// Comparison-only interpolants: piecewise chords and the Fritsch-Carlson
/// monotonicity-limited cubic.
class BaselineInterpolant {
 public:
  BaselineInterpolant(DataSet data, BaselineKind kind);
  BaselineKind kind() const { return kind_; }
  double eval(double x) const;

 private:
  DataSet data_;
  BaselineKind kind_;
  std::vector<double> d_;  // pchip slopes
};

BaselineInterpolant build_baseline(const DataSet& data, BaselineKind kind);
double eval_baseline(const BaselineInterpolant& b, double x);

}  // namespace cpcfif

#endif
