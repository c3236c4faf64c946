#include "cpcfif/fif.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "cpcfif/kernels.hpp"

namespace cpcfif {

namespace {

double poly_eval(const std::array<double, 6>& c, double t, int order) {
  switch (order) {
    case 0:
      return ((((c[5] * t + c[4]) * t + c[3]) * t + c[2]) * t + c[1]) * t +
             c[0];
    case 1:
      return (((5.0 * c[5] * t + 4.0 * c[4]) * t + 3.0 * c[3]) * t +
              2.0 * c[2]) *
                 t +
             c[1];
    case 2:
      return ((20.0 * c[5] * t + 12.0 * c[4]) * t + 6.0 * c[3]) * t +
             2.0 * c[2];
    default:
      throw std::invalid_argument("base_value: order must be 0, 1 or 2");
  }
}

/// sup bound of a degree-5 power-basis polynomial on [0,1] via the Bernstein
/// control-point hull.
double bernstein_hull5(const std::array<double, 6>& c) {
  static constexpr double binom5[6] = {1, 5, 10, 10, 5, 1};
  static constexpr double binom[6][6] = {
      {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
      {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
  double m = 0.0;
  for (int j = 0; j <= 5; ++j) {
    double bj = 0.0;
    for (int i = 0; i <= j; ++i) bj += binom[j][i] / binom5[i] * c[i];
    m = std::max(m, std::fabs(bj));
  }
  return m;
}

double theta_cubic(double U, double V, double W, double X, double th,
                   int order) {
  const double om = 1.0 - th;
  switch (order) {
    case 0:
      return U * om * om * om + V * th * om * om + W * th * th * om +
             X * th * th * th;
    case 1:
      return -3.0 * U * om * om + V * om * (1.0 - 3.0 * th) +
             W * th * (2.0 - 3.0 * th) + 3.0 * X * th * th;
    case 2:
      return 6.0 * U * om + V * (6.0 * th - 4.0) + W * (2.0 - 6.0 * th) +
             6.0 * X * th;
    default:
      throw std::invalid_argument("h_value: order must be 0, 1 or 2");
  }
}

double chord_through(const DataSet& data, std::size_t s, double x, int order) {
  const double slope =
      (data.u(s + 1) - data.u(s)) / (data.x(s + 1) - data.x(s));
  if (order == 0) return data.u(s) + slope * (x - data.x(s));
  if (order == 1) return slope;
  return 0.0;
}

void check_same_data(const DataSet& a, const DataSet& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("build_cp_cfif: spline/data knot mismatch");
  for (std::size_t t = 0; t < a.size(); ++t)
    if (a.x(t) != b.x(t) || a.u(t) != b.u(t))
      throw std::invalid_argument("build_cp_cfif: spline built on other data");
}

}  // namespace

double FifModel::base_value(double x, int order) const {
  const double l = data_.span();
  const double tau = (x - data_.x_min()) / l;
  double v = poly_eval(base_coef_, tau, order);
  for (int k = 0; k < order; ++k) v /= l;
  return v;
}

double FifModel::map_value_at_image(std::size_t s, double x, double u,
                                    double image_x) const {
  const double lam = lambda_[s];
  if (variant_ == FifVariant::hermite_cubic) {
    const double th = (x - data_.x_min()) / data_.span();
    return lam * u + theta_cubic(U_[s], V_[s], W_[s], X_[s], th, 0);
  }
  if (base_kind_ == CpBase::additive_delta) {
    const double Sv = spline_.eval(x);
    return lam * u + Sv + (1.0 - lam) * (Sv - chord_through(data_, s, x, 0));
  }
  return lam * (u - base_value(x)) + spline_.eval(image_x);
}

double FifModel::map_value(std::size_t s, double x, double u) const {
  return map_value_at_image(s, x, u, maps_.apply(s, x));
}

double FifModel::h_value(std::size_t s, double x, int m) const {
  const double lam = lambda_[s];
  if (variant_ == FifVariant::hermite_cubic) {
    const double l = data_.span();
    const double th = (x - data_.x_min()) / l;
    double v = theta_cubic(U_[s], V_[s], W_[s], X_[s], th, m);
    for (int k = 0; k < m; ++k) v /= l;
    return v;
  }
  if (base_kind_ == CpBase::additive_delta) {
    return (2.0 - lam) * spline_.eval(x, m) -
           (1.0 - lam) * chord_through(data_, s, x, m);
  }
  double v = spline_.eval(maps_.apply(s, x), m);
  for (int k = 0; k < m; ++k) v *= maps_.a(s);
  return v - lam * base_value(x, m);
}

double FifModel::sup_abs_bound() const {
  const double lmax = lambda_.max_abs();
  double sup_h = 0.0;
  if (variant_ == FifVariant::hermite_cubic) {
    for (std::size_t s = 0; s < U_.size(); ++s)
      sup_h = std::max(sup_h, std::max({std::fabs(U_[s]), std::fabs(V_[s]) / 3.0,
                                        std::fabs(W_[s]) / 3.0,
                                        std::fabs(X_[s])}));
  } else if (base_kind_ == CpBase::additive_delta) {
    double max_u = 0.0;
    for (double u : data_.us()) max_u = std::max(max_u, std::fabs(u));
    sup_h = (2.0 + lmax) * spline_.sup_bound() + (1.0 + lmax) * max_u;
  } else {
    sup_h = spline_.sup_bound() + lmax * bernstein_hull5(base_coef_);
  }
  return sup_h / (1.0 - lmax);
}

void FifModel::verify_endpoint_matching() const {
  double scale = 1.0;
  for (double u : data_.us()) scale = std::max(scale, std::fabs(u));
  for (std::size_t s = 0; s < maps_.count(); ++s) {
    const double left = map_value(s, data_.x_min(), data_.u(0));
    const double right = map_value(s, data_.x_max(), data_.u(data_.size() - 1));
    if (std::fabs(left - data_.u(s)) > 1e-10 * scale ||
        std::fabs(right - data_.u(s + 1)) > 1e-10 * scale)
      throw std::domain_error(
          "FIF build: map components fail F_s(x_1,u_1)=u_s / "
          "F_s(x_M,u_M)=u_{s+1} (knot verification)");
  }
}

FifModel build_hermite_cubic_fif(const DataSet& data,
                                 const ScalingVector& lambda,
                                 const std::vector<double>& d) {
  if (lambda.size() != data.intervals())
    throw std::invalid_argument("build_hermite_cubic_fif: lambda size");
  if (d.size() != data.size())
    throw std::invalid_argument("build_hermite_cubic_fif: derivative size");
  AffineMaps maps = build_affine_maps(data);
  for (std::size_t s = 0; s < maps.count(); ++s)
    if (!(std::fabs(lambda[s]) < maps.a(s)))
      throw std::domain_error(
          "build_hermite_cubic_fif: |lambda_s| < a_s violated at interval " +
          std::to_string(s));

  FifModel m(FifVariant::hermite_cubic, data, std::move(maps), lambda,
             build_spline(data, d));
  const std::size_t n = data.size();
  const double l = data.span();
  const double y1 = data.u(0), yM = data.u(n - 1);
  const double d1 = d.front(), dM = d.back();
  m.U_.resize(data.intervals());
  m.V_.resize(data.intervals());
  m.W_.resize(data.intervals());
  m.X_.resize(data.intervals());
  for (std::size_t i = 0; i < data.intervals(); ++i) {
    const double lam = lambda[i];
    const double ai = m.maps_.a(i);
    m.U_[i] = data.u(i) - lam * y1;
    m.V_[i] = 3.0 * (data.u(i) - lam * y1) + l * (ai * d[i] - lam * d1);
    m.W_[i] = 3.0 * (data.u(i + 1) - lam * yM) - l * (ai * d[i + 1] - lam * dM);
    m.X_[i] = data.u(i + 1) - lam * yM;
  }
  m.verify_endpoint_matching();
  return m;
}

FifModel build_cp_cfif(const DataSet& data, const ScalingVector& lambda,
                       const SplineModel& spline, CpBase base,
                       bool verify_knots) {
  if (lambda.size() != data.intervals())
    throw std::invalid_argument("build_cp_cfif: lambda size");
  check_same_data(data, spline.data());

  FifModel m(FifVariant::curvature_preserving, data, build_affine_maps(data),
             lambda, spline);
  m.base_kind_ = base;
  const double l = data.span();
  const double u1 = data.u(0), uM = data.u(data.size() - 1);
  if (base == CpBase::endpoint_chord || base == CpBase::additive_delta) {
    m.base_coef_ = {u1, uM - u1, 0.0, 0.0, 0.0, 0.0};
  } else {
    const double d1 = l * spline.eval_in_interval(0, data.x_min(), 1);
    const double dM = l * spline.eval_in_interval(data.intervals() - 1,
                                                  data.x_max(), 1);
    const double s1 = l * l * spline.eval_in_interval(0, data.x_min(), 2);
    const double sM = l * l * spline.eval_in_interval(data.intervals() - 1,
                                                      data.x_max(), 2);
    m.base_coef_ = {u1,
                    d1,
                    0.5 * s1,
                    -10.0 * u1 - 6.0 * d1 - 1.5 * s1 + 10.0 * uM - 4.0 * dM +
                        0.5 * sM,
                    15.0 * u1 + 8.0 * d1 + 1.5 * s1 - 15.0 * uM + 7.0 * dM -
                        1.0 * sM,
                    -6.0 * u1 - 3.0 * d1 - 0.5 * s1 + 6.0 * uM - 3.0 * dM +
                        0.5 * sM};
  }
  if (verify_knots) m.verify_endpoint_matching();
  return m;
}

std::size_t default_point_cap() {
  if (const char* env = std::getenv("CPCFIF_POINT_CAP")) {
    const unsigned long long v = std::strtoull(env, nullptr, 10);
    if (v >= 16) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 22;
}

AttractorPoints refine_attractor(const FifModel& model, int depth) {
  return refine_attractor(model, depth, default_point_cap());
}

AttractorPoints refine_attractor(const FifModel& model, int depth,
                                 std::size_t point_cap) {
  if (depth < 0) throw std::invalid_argument("refine_attractor: depth >= 0");
  if (!model.interpolates())
    throw std::invalid_argument(
        "refine_attractor: knots are not attractor points for the "
        "additive_delta variant");
  const DataSet& data = model.data();
  const AffineMaps& maps = model.maps();
  const std::size_t m = data.intervals();

  AttractorPoints cur{data.xs(), data.us()};
  for (int level = 0; level < depth; ++level) {
    const std::size_t next_size = m * cur.x.size() - (m - 1);
    if (next_size > point_cap)
      throw std::length_error(
          "refine_attractor: point cap exceeded at depth " +
          std::to_string(level + 1) + " (" + std::to_string(next_size) +
          " points)");
    AttractorPoints next;
    next.x.reserve(next_size);
    next.f.reserve(next_size);
    for (std::size_t s = 0; s < m; ++s) {
      for (std::size_t p = (s == 0) ? 0 : 1; p < cur.x.size(); ++p) {
        const double qx = maps.apply(s, cur.x[p]);
        next.x.push_back(qx);
        next.f.push_back(model.map_value_at_image(s, cur.x[p], cur.f[p], qx));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

double eval_fif(const FifModel& model, double x, double tol) {
  const DataSet& data = model.data();
  if (!(x >= data.x_min()) || !(x <= data.x_max()))
    throw std::domain_error("eval_fif: x outside [x_1, x_M]");
  if (!(tol > 0.0)) throw std::invalid_argument("eval_fif: tol must be > 0");

  const double lmax = model.lambda().max_abs();
  int levels = 0;
  if (lmax > 0.0) {
    const double amp = model.sup_abs_bound() + model.spline().sup_bound();
    if (amp > tol)
      levels = static_cast<int>(
          std::ceil(std::log(tol / amp) / std::log(lmax)));
    levels = std::clamp(levels, 0, 100000);
  }

  std::vector<double> orbit(static_cast<std::size_t>(levels) + 1);
  std::vector<std::size_t> maps_taken(static_cast<std::size_t>(levels));
  orbit[0] = x;
  for (int k = 0; k < levels; ++k) {
    const std::size_t s = locate_interval(data, orbit[k]);
    maps_taken[k] = s;
    orbit[k + 1] = std::clamp(model.maps().invert(s, orbit[k]), data.x_min(),
                              data.x_max());
  }
  double v = model.spline().eval(orbit[levels]);
  for (int k = levels; k-- > 0;)
    v = model.map_value_at_image(maps_taken[k], orbit[k + 1], v, orbit[k]);
  return v;
}

namespace {

/// Precomputed per-grid-point sweep data for the fixed-point engine.
struct SweepPlan {
  std::vector<std::int32_t> idx;
  std::vector<double> w, scale, sub, add, seed;
  double contraction = 0.0;
};

SweepPlan make_plan(const FifModel& model, const Grid& grid, int order) {
  const DataSet& data = model.data();
  const AffineMaps& maps = model.maps();
  const std::size_t n = grid.size();
  const double h = grid.spacing();

  SweepPlan plan;
  plan.idx.resize(n);
  plan.w.resize(n);
  plan.scale.resize(n);
  plan.sub.assign(n, 0.0);
  plan.add.resize(n);
  plan.seed.resize(n);

  const bool cp_alpha = model.variant() == FifVariant::curvature_preserving &&
                        model.base_kind() != CpBase::additive_delta;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = grid.point(i);
    const std::size_t s = locate_interval(data, y);
    const double xp =
        std::clamp(maps.invert(s, y), data.x_min(), data.x_max());
    auto j = static_cast<std::int64_t>((xp - grid.x0()) / h);
    j = std::clamp<std::int64_t>(j, 0, static_cast<std::int64_t>(n) - 2);
    plan.idx[i] = static_cast<std::int32_t>(j);
    plan.w[i] = (xp - grid.point(static_cast<std::size_t>(j))) / h;

    const double am = std::pow(maps.a(s), order);
    plan.scale[i] = model.lambda()[s] / am;
    plan.contraction = std::max(plan.contraction, std::fabs(plan.scale[i]));
    plan.seed[i] = model.spline().eval(y, order);
    if (order == 0) {
      if (cp_alpha) {
        plan.sub[i] = model.base_value(xp);
        plan.add[i] = plan.seed[i];  // S at the grid point itself
      } else {
        plan.add[i] = model.h_value(s, xp, 0);
      }
    } else if (cp_alpha) {
      // H^(m)(x)/a^m = S^(m)(L_s(x)) - lambda_s b^(m)(x)/a^m with S^(m)
      // taken at the grid point directly; lambda = 0 then reproduces the
      // spline derivatives bit for bit
      plan.add[i] =
          plan.seed[i] - model.lambda()[s] * model.base_value(xp, order) / am;
    } else {
      plan.add[i] = model.h_value(s, xp, order) / am;
    }
  }
  return plan;
}

std::size_t iteration_cap(double tol, double contraction) {
  if (contraction <= 0.0) return 2;
  const double need = std::log(std::min(tol, 0.5)) / std::log(contraction);
  return static_cast<std::size_t>(std::max(8.0, std::ceil(10.0 * need)));
}

std::vector<double> run_fixed_point(const SweepPlan& plan, double tol,
                                    FixedPointStats* stats) {
  const auto& ops = kernels::active();
  const std::size_t n = plan.seed.size();
  std::vector<double> f = plan.seed, g(n);
  const double stop = tol * (1.0 - plan.contraction);
  const std::size_t cap = iteration_cap(tol, plan.contraction);
  for (std::size_t it = 0; it < cap; ++it) {
    ops.pullback_sweep(f.data(), plan.idx.data(), plan.w.data(),
                       plan.scale.data(), plan.sub.data(), plan.add.data(),
                       g.data(), n);
    const double delta = ops.max_abs_diff(f.data(), g.data(), n);
    f.swap(g);
    if (stats) {
      ++stats->iterations;
      stats->sup_deltas.push_back(delta);
    }
    if (delta <= stop) return f;
  }
  throw std::runtime_error(
      "fixed-point iteration failed to contract within its cap; IFS "
      "invariants violated");
}

void central_differences(const std::vector<double>& f, double h,
                         std::vector<double>& f1, std::vector<double>& f2) {
  const std::size_t n = f.size();
  f1.resize(n);
  f2.resize(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    f1[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    f2[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
  }
  f1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  f1[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  f2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
  f2[n - 1] =
      (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
}

void check_grid(const FifModel& model, const Grid& grid) {
  const DataSet& data = model.data();
  const double tol = 1e-12 * data.span();
  if (std::fabs(grid.x0() - data.x_min()) > tol ||
      std::fabs(grid.x1() - data.x_max()) > tol)
    throw std::invalid_argument("grid must span [x_1, x_M] exactly");
}

}  // namespace

std::vector<double> derivative_ifs_eval(const FifModel& model, int order,
                                        const Grid& grid, double tol) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("derivative_ifs_eval: order must be 1 or 2");
  check_grid(model, grid);
  if (!(tol > 0.0))
    throw std::invalid_argument("derivative_ifs_eval: tol must be > 0");
  const AffineMaps& maps = model.maps();
  for (std::size_t s = 0; s < maps.count(); ++s)
    if (!(std::fabs(model.lambda()[s]) < std::pow(maps.a(s), order)))
      throw std::domain_error(
          "derivative_ifs_eval: |lambda_s| < a_s^m violated; the derivative "
          "FIF is not defined");
  const SweepPlan plan = make_plan(model, grid, order);
  return run_fixed_point(plan, tol, nullptr);
}

SampledCurve eval_fif_grid(const FifModel& model, const Grid& grid, double tol,
                           FixedPointStats* stats) {
  check_grid(model, grid);
  if (!(tol > 0.0)) throw std::invalid_argument("eval_fif_grid: tol > 0");
  if (grid.size() < 8 * model.data().intervals())
    throw std::invalid_argument(
        "eval_fif_grid: grid resolution must be >= 8(M-1)");

  const SweepPlan plan = make_plan(model, grid, 0);
  SampledCurve curve{grid, run_fixed_point(plan, tol, stats), {}, {}};

  bool analytic = true;
  for (std::size_t s = 0; s < model.maps().count(); ++s)
    analytic = analytic && std::fabs(model.lambda()[s]) <
                               model.maps().a(s) * model.maps().a(s);
  if (analytic) {
    curve.f1 = derivative_ifs_eval(model, 1, grid, std::min(tol, 1e-12));
    curve.f2 = derivative_ifs_eval(model, 2, grid, std::min(tol, 1e-12));
    curve.deriv_source = DerivativeSource::analytic_derivative_ifs;
  } else {
    central_differences(curve.f, grid.spacing(), curve.f1, curve.f2);
    curve.deriv_source = DerivativeSource::finite_difference;
  }
  return curve;
}

}  // namespace cpcfif
