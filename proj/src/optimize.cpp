#include "cpcfif/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cpcfif/curvature.hpp"
#include "cpcfif/kernels.hpp"

namespace cpcfif {

void PenaltyConfig::validate(std::size_t intervals) const {
  if (quad_n < 65)
    throw std::invalid_argument("PenaltyConfig: quad_n >= 65 required");
  if (rule == QuadratureRule::simpson && quad_n % 2 == 0)
    throw std::invalid_argument("PenaltyConfig: simpson requires odd quad_n");
  if (!bounds.empty() && bounds.size() != intervals)
    throw std::invalid_argument("PenaltyConfig: bounds length mismatch");
  double min_bound = 0.999;
  for (double b : bounds) {
    if (!(b > 0.0) || b >= 1.0)
      throw std::invalid_argument("PenaltyConfig: bounds must lie in (0, 1)");
    min_bound = std::min(min_bound, b);
  }
  if (lambda_min < 0.0 || lambda_min >= min_bound)
    throw std::invalid_argument(
        "PenaltyConfig: 0 <= lambda_min < min bound required");
  if (!(tol > 0.0) || !(fif_tol > 0.0))
    throw std::invalid_argument("PenaltyConfig: tolerances must be > 0");
}

ScalingBounds curvature_scaling_bounds(const DataSet& data, const SplineModel& spline,
                               double epsilon, double f2_sup_estimate,
                               std::size_t sup_grid_n) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("curvature_scaling_bounds: epsilon > 0 required");
  constexpr double kBelowOne = 1.0 - 1e-12;

  const Grid grid(data.x_min(), data.x_max(),
                  sup_grid_n >= 2 ? sup_grid_n : data.size());
  const SupNorms sn = sup_norms(spline, grid);
  const AffineMaps maps = build_affine_maps(data);

  ScalingBounds out;
  out.K = sn.K;
  out.C = sn.C;
  const double pow_k = std::pow(1.0 + sn.K * sn.K, 1.5);
  if (sn.C <= 0.0) {
    // no curvature constraint: only the contraction cap remains
    out.term_mid = kBelowOne;
    out.term_sup = kBelowOne;
    out.beta_tight = kBelowOne;
  } else {
    out.term_mid = 3.0 * sn.C / (epsilon * pow_k);
    const double f2_sup = f2_sup_estimate > 0.0 ? f2_sup_estimate : sn.C;
    out.term_sup = epsilon * pow_k / f2_sup;
    out.beta_tight = std::min(epsilon * pow_k / sn.C, kBelowOne);
  }
  out.beta.resize(data.intervals());
  for (std::size_t s = 0; s < data.intervals(); ++s)
    out.beta[s] =
        std::min({maps.a(s), out.term_mid, out.term_sup, kBelowOne});
  return out;
}

double penalty_J(const ScalingVector& lambda, const DataSet& data,
                 const SplineModel& spline, const PenaltyConfig& config) {
  config.validate(data.intervals());
  const FifModel model = build_cp_cfif(data, lambda, spline, config.base);
  const Grid grid(data.x_min(), data.x_max(), config.quad_n);
  const SampledCurve curve = eval_fif_grid(model, grid, config.fif_tol);
  const CurvatureProfile kf = curvature_of(curve);

  SampledCurve sref{grid, {}, {}, {}};
  sref.f.resize(grid.size());
  sref.f1.resize(grid.size());
  sref.f2.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    sref.f[i] = spline.eval(x);
    sref.f1[i] = spline.eval(x, 1);
    sref.f2[i] = spline.eval(x, 2);
  }
  const CurvatureProfile ks = curvature_of(sref);

  std::vector<double> w(grid.size());
  const double h = grid.spacing();
  if (config.rule == QuadratureRule::trapezoid) {
    for (std::size_t i = 0; i < grid.size(); ++i) w[i] = h;
    w.front() = w.back() = 0.5 * h;
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i)
      w[i] = (i == 0 || i + 1 == grid.size()) ? h / 3.0
             : (i % 2 == 1)                   ? 4.0 * h / 3.0
                                              : 2.0 * h / 3.0;
  }
  return kernels::active().weighted_sum_sq_diff(w.data(), kf.kappa.data(),
                                                ks.kappa.data(), grid.size());
}

namespace {

/// Golden-section minimum of fn over [lo, hi] to absolute x tolerance.
double golden_section(const std::function<double(double)>& fn, double lo,
                      double hi, double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = fn(c), fd = fn(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PenaltyResult minimize_penalty(const DataSet& data, const SplineModel& spline,
                               const PenaltyConfig& config,
                               const ScalingVector& lambda_init) {
  config.validate(data.intervals());
  const std::size_t m = data.intervals();
  std::vector<double> bounds =
      config.bounds.empty() ? std::vector<double>(m, 0.999) : config.bounds;
  if (lambda_init.size() != m)
    throw std::invalid_argument("minimize_penalty: lambda_init size");
  for (std::size_t s = 0; s < m; ++s)
    if (std::fabs(lambda_init[s]) > bounds[s])
      throw std::invalid_argument(
          "minimize_penalty: lambda_init outside bounds");

  std::vector<double> lam = lambda_init.values();
  auto J_of = [&](const std::vector<double>& v) {
    return penalty_J(ScalingVector(v), data, spline, config);
  };

  double J_cur = J_of(lam);
  std::vector<double> sweep_J{J_cur};
  bool converged = false;

  constexpr double kXtol = 1e-4;
  std::size_t sweep = 0;
  for (; sweep < config.max_sweeps; ++sweep) {
    const double J_before = J_cur;
    for (std::size_t s = 0; s < m; ++s) {
      const double hi = std::min(bounds[s], 0.999);
      const double lo = -hi;
      auto coord_fn = [&](double v) {
        std::vector<double> trial = lam;
        trial[s] = v;
        return J_of(trial);
      };
      double best_v = lam[s];
      double best_J = J_cur;
      auto consider = [&](double v) {
        const double Jv = coord_fn(v);
        if (Jv < best_J) {
          best_J = Jv;
          best_v = v;
        }
      };
      if (config.lambda_min > 0.0) {
        consider(golden_section(coord_fn, config.lambda_min, hi, kXtol));
        consider(golden_section(coord_fn, lo, -config.lambda_min, kXtol));
      } else {
        consider(golden_section(coord_fn, lo, hi, kXtol));
      }
      lam[s] = best_v;
      J_cur = best_J;
    }
    sweep_J.push_back(J_cur);
    if (J_before - J_cur < config.tol * (1.0 + J_cur)) {
      ++sweep;
      converged = true;
      break;
    }
  }
  return PenaltyResult{ScalingVector(lam, bounds), J_cur,
                       sweep,                      converged,
                       std::move(bounds),          std::move(sweep_J)};
}

}  // namespace cpcfif
