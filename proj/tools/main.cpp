#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cpcfif/analysis.hpp"
#include "cpcfif/curvature.hpp"
#include "cpcfif/fif.hpp"
#include "cpcfif/kernels.hpp"
#include "cpcfif/optimize.hpp"
#include "cpcfif/splines.hpp"
#include "io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cpcfif;

namespace {

struct Options {
  std::string command;
  std::string dataset = "high_curvature";
  std::string data_path;
  std::string lambda_spec = "0.05";
  std::string scheme = "natural_spline";
  std::string base = "quintic";
  std::string variant = "cp";
  std::size_t grid_n = 1001;
  double tol = 1e-10;
  double epsilon = 0.07;
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv", "json", "svg"};
  std::uint32_t seed = 42;
  std::size_t noisy_n = 9;
  double sigma = 0.1;
  std::vector<double> eval_at;
  // optimize
  std::size_t quad_n = 1001;
  std::string quad_rule = "simpson";
  double tau = 1e-6;
  std::size_t max_sweeps = 200;
  double lambda_min = 0.0;
  double bound = 0.0;  // 0 = derive from the curvature-tolerance analysis
  // bench
  std::vector<std::size_t> bench_points = {10, 20, 50, 100, 200, 500};
  std::size_t bench_reps = 9;
  std::string reproduce_target;
};

DerivativeScheme scheme_of(const std::string& s) {
  if (s == "natural_spline") return DerivativeScheme::natural_spline;
  if (s == "three_point") return DerivativeScheme::three_point;
  throw std::invalid_argument("unknown scheme: " + s);
}

CpBase base_of(const std::string& s) {
  if (s == "quintic") return CpBase::endpoint_quintic;
  if (s == "chord") return CpBase::endpoint_chord;
  if (s == "additive_delta") return CpBase::additive_delta;
  throw std::invalid_argument("unknown base: " + s);
}

std::string base_name(CpBase b) {
  switch (b) {
    case CpBase::endpoint_quintic: return "endpoint_quintic";
    case CpBase::endpoint_chord: return "endpoint_chord";
    default: return "additive_delta";
  }
}

std::string scheme_name(DerivativeScheme s) {
  return s == DerivativeScheme::natural_spline ? "natural_spline"
                                               : "three_point";
}

DataSet resolve_dataset(const Options& opt) {
  if (!opt.data_path.empty()) {
    if (!fs::exists(opt.data_path))
      throw io::io_error("input file does not exist: " + opt.data_path);
    return io::read_csv(opt.data_path);
  }
  return canonical_dataset(canonical_id_from_string(opt.dataset), opt.seed,
                           opt.noisy_n, opt.sigma);
}

std::string dataset_label(const Options& opt) {
  return opt.data_path.empty() ? opt.dataset : "file:" + opt.data_path;
}

struct LambdaChoice {
  ScalingVector lambda;
  std::string mode;
  std::optional<ScalingBounds> bounds;
  std::optional<PenaltyResult> optimize_result;
};

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  return v;
}

PenaltyConfig penalty_config(const Options& opt, const DataSet& data,
                             const SplineModel& spline) {
  PenaltyConfig cfg;
  cfg.quad_n = opt.quad_n;
  cfg.rule = opt.quad_rule == "trapezoid" ? QuadratureRule::trapezoid
                                          : QuadratureRule::simpson;
  cfg.tol = opt.tau;
  cfg.max_sweeps = opt.max_sweeps;
  cfg.lambda_min = opt.lambda_min;
  cfg.base = base_of(opt.base);
  if (opt.bound > 0.0) {
    cfg.bounds.assign(data.intervals(), opt.bound);
  } else {
    cfg.bounds = curvature_scaling_bounds(data, spline, opt.epsilon, 0.0).beta;
  }
  return cfg;
}

LambdaChoice resolve_lambda(const Options& opt, const DataSet& data,
                            const SplineModel& spline) {
  const std::string& spec = opt.lambda_spec;
  if (spec == "optimize") {
    const PenaltyConfig cfg = penalty_config(opt, data, spline);
    std::vector<double> init(data.intervals());
    for (std::size_t s = 0; s < init.size(); ++s)
      init[s] = std::max(0.5 * cfg.bounds[s], cfg.lambda_min);
    PenaltyResult res =
        minimize_penalty(data, spline, cfg, ScalingVector(init));
    ScalingVector lam = res.lambda;
    return {std::move(lam), "optimize",
            curvature_scaling_bounds(data, spline, opt.epsilon, 0.0), std::move(res)};
  }
  if (spec.rfind("theorem4:", 0) == 0) {
    const double eps = std::stod(spec.substr(9));
    ScalingBounds b = curvature_scaling_bounds(data, spline, eps, 0.0);
    std::vector<double> lam(data.intervals());
    for (std::size_t s = 0; s < lam.size(); ++s) lam[s] = 0.99 * b.beta[s];
    return {ScalingVector(lam, b.beta), "theorem4", std::move(b),
            std::nullopt};
  }
  std::vector<double> v = parse_vector(spec);
  if (v.size() == 1) {
    return {ScalingVector::uniform(v[0], data.intervals()), "scalar",
            std::nullopt, std::nullopt};
  }
  if (v.size() != data.intervals())
    throw std::invalid_argument(
        "lambda vector length must equal the interval count (" +
        std::to_string(data.intervals()) + ")");
  return {ScalingVector(std::move(v)), "explicit", std::nullopt, std::nullopt};
}

bool wants(const Options& opt, const std::string& fmt) {
  for (const auto& f : opt.formats)
    if (f == fmt) return true;
  return false;
}

json bounds_json(const ScalingBounds& b, double epsilon) {
  return json{{"epsilon", epsilon},   {"beta", b.beta},
              {"beta_tight", b.beta_tight}, {"K", b.K},
              {"C", b.C},             {"term_mid", b.term_mid},
              {"term_sup", b.term_sup}};
}

struct FitArtifacts {
  DataSet data;
  SplineModel spline;
  FifModel model;
  SampledCurve curve;
  CurvatureProfile kappa_f, kappa_s;
  LambdaChoice lambda;
};

FitArtifacts run_fit_pipeline(const Options& opt) {
  DataSet data = resolve_dataset(opt);
  SplineModel spline = build_spline(
      data, estimate_derivatives(data, scheme_of(opt.scheme)));
  LambdaChoice lam = resolve_lambda(opt, data, spline);

  FifModel model =
      opt.variant == "hermite"
          ? build_hermite_cubic_fif(
                data, lam.lambda,
                estimate_derivatives(data, scheme_of(opt.scheme)))
          : build_cp_cfif(data, lam.lambda, spline, base_of(opt.base));

  const Grid grid(data.x_min(), data.x_max(), opt.grid_n);
  SampledCurve curve = eval_fif_grid(model, grid, opt.tol);
  CurvatureProfile kf = curvature_of(curve);

  SampledCurve sc{grid, {}, {}, {}, DerivativeSource::analytic_derivative_ifs};
  sc.f.resize(grid.size());
  sc.f1.resize(grid.size());
  sc.f2.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sc.f[i] = spline.eval(grid.point(i));
    sc.f1[i] = spline.eval(grid.point(i), 1);
    sc.f2[i] = spline.eval(grid.point(i), 2);
  }
  CurvatureProfile ks = curvature_of(sc);
  return {std::move(data),  std::move(spline), std::move(model),
          std::move(curve), std::move(kf),     std::move(ks),
          std::move(lam)};
}

json summary_json(const Options& opt, const FitArtifacts& art) {
  const Grid& grid = art.curve.grid;
  std::vector<double> s_vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    s_vals[i] = art.spline.eval(grid.point(i));
  const double rmse = std::sqrt(
      kernels::active().sum_sq_diff(art.curve.f.data(), s_vals.data(),
                                    grid.size()) /
      static_cast<double>(grid.size()));
  const auto dev = curvature_deviation(art.kappa_f, art.kappa_s);
  json j{
      {"dataset", dataset_label(opt)},
      {"variant", opt.variant == "hermite" ? "hermite_cubic"
                                           : "curvature_preserving"},
      {"base", base_name(base_of(opt.base))},
      {"scheme", scheme_name(scheme_of(opt.scheme))},
      {"lambda", art.lambda.lambda.values()},
      {"lambda_mode", art.lambda.mode},
      {"grid_n", grid.size()},
      {"seed", opt.seed},
      {"rmse_vs_spline", rmse},
      {"max_curvature_error", dev.max_err},
      {"curvature_error_rmse", dev.rmse},
      {"derivative_source",
       art.curve.deriv_source == DerivativeSource::analytic_derivative_ifs
           ? "analytic_derivative_ifs"
           : "finite_difference"},
      {"kernels", std::string(kernels::active_name())},
  };
  if (art.lambda.bounds)
    j["bounds"] = bounds_json(*art.lambda.bounds, opt.epsilon);
  if (art.lambda.optimize_result) {
    const PenaltyResult& r = *art.lambda.optimize_result;
    j["optimize"] = json{{"J", r.J},
                         {"sweeps", r.sweeps},
                         {"converged", r.converged},
                         {"sweep_J", r.sweep_J}};
  }
  return j;
}

void ensure_outdir(const Options& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw io::io_error("cannot create output directory: " + opt.out_dir);
}

int cmd_fit(const Options& opt) {
  const FitArtifacts art = run_fit_pipeline(opt);
  ensure_outdir(opt);
  const Grid& grid = art.curve.grid;
  const std::vector<double> xs = grid.points();
  std::vector<double> s_vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    s_vals[i] = art.spline.eval(xs[i]);

  const fs::path dir(opt.out_dir);
  if (wants(opt, "csv"))
    io::write_csv(dir / "fit_curve.csv",
                  {{"x", &xs},
                   {"F", &art.curve.f},
                   {"F1", &art.curve.f1},
                   {"F2", &art.curve.f2},
                   {"S", &s_vals},
                   {"kF", &art.kappa_f.kappa},
                   {"kS", &art.kappa_s.kappa}});
  if (wants(opt, "json"))
    io::write_json(dir / "fit_summary.json", summary_json(opt, art));
  if (wants(opt, "svg"))
    io::write_text(
        dir / "fit_curve.svg",
        io::svg_plot("interpolants: " + dataset_label(opt), xs,
                     {{"F", "#c0392b", &art.curve.f},
                      {"S", "#2980b9", &s_vals}}));
  return 0;
}

int cmd_eval(const Options& opt) {
  if (opt.eval_at.empty())
    throw std::invalid_argument("eval: provide at least one --at");
  const FitArtifacts art = run_fit_pipeline(opt);
  std::printf("x,F\n");
  for (double x : opt.eval_at)
    std::printf("%.17g,%.17g\n", x, eval_fif(art.model, x, opt.tol));
  return 0;
}

int cmd_curvature(const Options& opt) {
  const FitArtifacts art = run_fit_pipeline(opt);
  ensure_outdir(opt);
  const fs::path dir(opt.out_dir);
  const std::vector<double> xs = art.curve.grid.points();
  const auto dev = curvature_deviation(art.kappa_f, art.kappa_s);
  io::write_csv(dir / "curvature.csv", {{"x", &xs},
                                        {"kF", &art.kappa_f.kappa},
                                        {"kS", &art.kappa_s.kappa},
                                        {"abs_err", &dev.abs_err}});
  json j{{"dataset", dataset_label(opt)},
         {"max_curvature_error", dev.max_err},
         {"curvature_error_rmse", dev.rmse},
         {"discrete_knot_curvature", discrete_curvature(art.data)}};
  io::write_json(dir / "curvature_summary.json", j);
  if (wants(opt, "svg"))
    io::write_text(dir / "curvature.svg",
                   io::svg_plot("curvature: " + dataset_label(opt), xs,
                                {{"kF", "#c0392b", &art.kappa_f.kappa},
                                 {"kS", "#2980b9", &art.kappa_s.kappa}}));
  return 0;
}

int cmd_optimize(const Options& opt) {
  const DataSet data = resolve_dataset(opt);
  const SplineModel spline = build_spline(
      data, estimate_derivatives(data, scheme_of(opt.scheme)));
  const PenaltyConfig cfg = penalty_config(opt, data, spline);
  std::vector<double> init(data.intervals());
  for (std::size_t s = 0; s < init.size(); ++s)
    init[s] = std::max(0.5 * cfg.bounds[s], cfg.lambda_min);
  const PenaltyResult res =
      minimize_penalty(data, spline, cfg, ScalingVector(init));
  ensure_outdir(opt);
  json j{{"dataset", dataset_label(opt)},
         {"lambda", res.lambda.values()},
         {"J", res.J},
         {"sweeps", res.sweeps},
         {"converged", res.converged},
         {"bounds", res.bounds},
         {"lambda_min", cfg.lambda_min},
         {"quad_n", cfg.quad_n},
         {"rule", opt.quad_rule},
         {"sweep_J", res.sweep_J}};
  io::write_json(fs::path(opt.out_dir) / "optimize_result.json", j);
  std::printf("J = %.12g after %zu sweeps (converged = %s)\n", res.J,
              res.sweeps, res.converged ? "true" : "false");
  return 0;
}

int cmd_bench(const Options& opt) {
  const DataSet data = resolve_dataset(opt);
  const TimingTable table =
      timing_bench(data, opt.bench_points, opt.bench_reps);
  ensure_outdir(opt);

  std::ostringstream md;
  md << "# Timing (" << dataset_label(opt) << ", seconds, median of "
     << opt.bench_reps << ")\n\n| method |";
  for (std::size_t n : table.counts) md << " " << n << " pts |";
  md << "\n|---|";
  for (std::size_t i = 0; i < table.counts.size(); ++i) md << "---|";
  md << "\n";
  std::vector<std::string> methods = {"linear", "cubic", "pchip", "fif"};
  for (const auto& m : methods) {
    md << "| " << m << " |";
    for (const auto& cell : table.cells)
      if (cell.method == m) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), " %.3e |", cell.median_seconds);
        md << buf;
      }
    md << "\n";
  }
  char ratio[160];
  std::snprintf(ratio, sizeof(ratio),
                "\nFIF/cubic overhead ratio: %.0f-%.0f (reported reference "
                "band: 200-250x).\n",
                table.fif_over_cubic_min, table.fif_over_cubic_max);
  md << ratio;
  io::write_text(fs::path(opt.out_dir) / "bench.md", md.str());

  std::vector<double> col_n, col_t;
  std::vector<std::string> col_m;
  std::ostringstream csv;
  csv << "method,points,median_seconds\n";
  for (const auto& cell : table.cells) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s,%zu,%.9e\n", cell.method.c_str(),
                  cell.points, cell.median_seconds);
    csv << buf;
  }
  io::write_text(fs::path(opt.out_dir) / "bench.csv", csv.str());
  std::printf("%s", md.str().c_str());
  return 0;
}

const std::vector<double> kTable1Lambda = {0.01, 0.011, 0.012, 0.013};

ScalingVector table1_lambda(const DataSet& data) {
  std::vector<double> lam(data.intervals());
  for (std::size_t s = 0; s < lam.size(); ++s)
    lam[s] = kTable1Lambda[s % kTable1Lambda.size()];
  return ScalingVector(lam);
}

int cmd_reproduce(const Options& opt) {
  ensure_outdir(opt);
  const fs::path dir(opt.out_dir);
  const std::vector<CanonicalId> ids = {CanonicalId::low_curvature,
                                        CanonicalId::high_curvature,
                                        CanonicalId::noisy_sine};
  // reference values for the side-by-side columns
  const double reference_rmse[] = {4.4408e-16, 0.0390, 0.0060};
  const double reference_kerr[] = {5.7674, 3.9932, 2.1922};

  if (opt.reproduce_target == "table1") {
    std::ostringstream md, csv;
    md << "# RMSE and maximum curvature error (lambda = [0.01, 0.011, "
          "0.012, 0.013], cycled)\n\n"
       << "| dataset | RMSE | reported RMSE | max curvature error | reported "
          "|\n|---|---|---|---|---|\n";
    csv << "dataset,rmse,reported_rmse,max_curvature_error,reported_max_"
           "curvature_error\n";
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const DataSet data = canonical_dataset(ids[k], opt.seed, opt.noisy_n,
                                             opt.sigma);
      const Grid grid(data.x_min(), data.x_max(), opt.grid_n);
      const auto rep = rmse_report(data, table1_lambda(data), grid);
      char row[256];
      std::snprintf(row, sizeof(row),
                    "| %s | %.6e | %.4e | %.4f | %.4f |\n",
                    to_string(ids[k]).c_str(), rep.rmse, reference_rmse[k],
                    rep.max_curvature_error, reference_kerr[k]);
      md << row;
      std::snprintf(row, sizeof(row), "%s,%.9e,%.4e,%.6f,%.4f\n",
                    to_string(ids[k]).c_str(), rep.rmse, reference_rmse[k],
                    rep.max_curvature_error, reference_kerr[k]);
      csv << row;
    }
    md << "\nCurvature-error magnitudes are construction-dependent and are "
          "not expected to match the reported column; see README.\n";
    io::write_text(dir / "table1.md", md.str());
    io::write_text(dir / "table1.csv", csv.str());
    std::printf("%s", md.str().c_str());
    return 0;
  }

  if (opt.reproduce_target == "table2") {
    for (CanonicalId id : ids) {
      Options sub = opt;
      sub.dataset = to_string(id);
      sub.data_path.clear();
      sub.out_dir = (dir / ("table2_" + to_string(id))).string();
      cmd_bench(sub);
    }
    return 0;
  }

  if (opt.reproduce_target == "fig_sensitivity") {
    const std::vector<double> lams = {0.001, 0.005, 0.01, 0.05};
    for (CanonicalId id : ids) {
      const DataSet data =
          canonical_dataset(id, opt.seed, opt.noisy_n, opt.sigma);
      const auto res = sensitivity_sweep(data, lams, 1025);
      const std::vector<double> xs = res.grid.points();
      std::vector<io::Column> cols{{"x", &xs}};
      std::vector<io::Series> series;
      const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a"};
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < res.curves.size(); ++i) {
        char lbl[48];
        std::snprintf(lbl, sizeof(lbl), "F1 lambda=%g", res.curves[i].lambda);
        labels.push_back(lbl);
      }
      for (std::size_t i = 0; i < res.curves.size(); ++i) {
        cols.push_back({labels[i], &res.curves[i].f1});
        series.push_back({labels[i], colors[i % 4], &res.curves[i].f1});
      }
      io::write_csv(dir / ("sensitivity_" + to_string(id) + ".csv"), cols);
      io::write_text(
          dir / ("sensitivity_" + to_string(id) + ".svg"),
          io::svg_plot("first derivative vs lambda: " + to_string(id), xs,
                       series));
      json j{{"dataset", to_string(id)},
             {"monotone_in_lambda", res.monotone_in_lambda}};
      std::vector<double> devs;
      for (const auto& c : res.curves) devs.push_back(c.sup_dev_from_spline);
      j["sup_dev_from_spline"] = devs;
      io::write_json(dir / ("sensitivity_" + to_string(id) + ".json"), j);
    }
    return 0;
  }

  if (opt.reproduce_target == "stability") {
    const std::vector<double> deltas = {0.1, 0.05, 0.025};
    std::ostringstream md, csv;
    md << "# Curvature stability under scaling perturbations (base 0.2)\n\n"
       << "| dataset | delta | sup deviation | ratio to previous |\n"
          "|---|---|---|---|\n";
    csv << "dataset,delta,deviation,ratio\n";
    for (CanonicalId id : ids) {
      const DataSet data =
          canonical_dataset(id, opt.seed, opt.noisy_n, opt.sigma);
      const auto table = stability_sweep(
          data, ScalingVector::uniform(0.2, data.intervals()), deltas);
      double prev = 0.0;
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const double ratio =
            i == 0 || prev <= 0.0 ? 0.0 : table.rows[i].deviation / prev;
        char row[192];
        std::snprintf(row, sizeof(row), "| %s | %.3g | %.6e | %.3f |\n",
                      to_string(id).c_str(), table.rows[i].delta,
                      table.rows[i].deviation, ratio);
        md << row;
        std::snprintf(row, sizeof(row), "%s,%.3g,%.9e,%.4f\n",
                      to_string(id).c_str(), table.rows[i].delta,
                      table.rows[i].deviation, ratio);
        csv << row;
        prev = table.rows[i].deviation;
      }
    }
    io::write_text(dir / "stability.md", md.str());
    io::write_text(dir / "stability.csv", csv.str());
    std::printf("%s", md.str().c_str());
    return 0;
  }

  throw std::invalid_argument("unknown reproduce target: " +
                              opt.reproduce_target);
}

void load_config_file(Options& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::io_error("cannot open config file: " + path);
  json j;
  in >> j;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
  };
  get("dataset", opt.dataset);
  get("data", opt.data_path);
  get("lambda", opt.lambda_spec);
  get("scheme", opt.scheme);
  get("base", opt.base);
  get("variant", opt.variant);
  get("grid", opt.grid_n);
  get("tol", opt.tol);
  get("epsilon", opt.epsilon);
  get("out", opt.out_dir);
  get("formats", opt.formats);
  get("seed", opt.seed);
  get("points", opt.noisy_n);
  get("sigma", opt.sigma);
  get("quad_n", opt.quad_n);
  get("rule", opt.quad_rule);
  get("tau", opt.tau);
  get("max_sweeps", opt.max_sweeps);
  get("lambda_min", opt.lambda_min);
  get("bound", opt.bound);
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--dataset", opt.dataset,
                  "canonical dataset: low_curvature|high_curvature|noisy_sine");
  cmd->add_option("--data", opt.data_path, "input CSV path (header x,y)");
  cmd->add_option("--lambda", opt.lambda_spec,
                  "scaling: vector 'a,b,...' | scalar | optimize | "
                  "theorem4:<eps>");
  cmd->add_option("--scheme", opt.scheme, "natural_spline|three_point");
  cmd->add_option("--base", opt.base, "quintic|chord|additive_delta");
  cmd->add_option("--variant", opt.variant, "cp|hermite");
  cmd->add_option("--grid", opt.grid_n, "evaluation grid size");
  cmd->add_option("--tol", opt.tol, "fixed-point tolerance");
  cmd->add_option("--epsilon", opt.epsilon, "curvature tolerance for bounds");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--formats", opt.formats, "any of: csv json svg")
      ->delimiter(',');
  cmd->add_option("--seed", opt.seed, "noisy_sine seed");
  cmd->add_option("--points", opt.noisy_n, "noisy_sine point count");
  cmd->add_option("--sigma", opt.sigma, "noisy_sine noise level");
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  std::string config_path;
  // config file first, flags override
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  if (!config_path.empty()) {
    try {
      load_config_file(opt, config_path);
    } catch (const io::io_error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 4;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: bad config: %s\n", e.what());
      return 2;
    }
  }

  CLI::App app{
      "curvature-preserving cubic fractal interpolation: fit, evaluate, "
      "optimize and reproduce the standard experiments"};
  app.set_version_flag(
      "--version",
      std::string("cpcfif 1.0 (kernels: ") +
          std::string(kernels::active_name()) + ")");
  std::string cfg_sink;
  app.add_option("--config", cfg_sink, "JSON config file (flags override)");
  app.require_subcommand(1);

  CLI::App* fit = app.add_subcommand("fit", "build a model, emit curve files");
  add_common(fit, opt);
  CLI::App* ev = app.add_subcommand("eval", "evaluate F at points");
  add_common(ev, opt);
  ev->add_option("--at", opt.eval_at, "abscissa (repeatable)");
  CLI::App* curv = app.add_subcommand("curvature", "curvature profiles");
  add_common(curv, opt);
  CLI::App* optm = app.add_subcommand("optimize", "minimize the penalty J");
  add_common(optm, opt);
  optm->add_option("--quad-n", opt.quad_n, "quadrature grid size");
  optm->add_option("--rule", opt.quad_rule, "simpson|trapezoid");
  optm->add_option("--tau", opt.tau, "sweep improvement tolerance");
  optm->add_option("--max-sweeps", opt.max_sweeps, "sweep cap");
  optm->add_option("--lambda-min", opt.lambda_min, "magnitude floor");
  optm->add_option("--bound", opt.bound, "explicit per-interval bound");
  CLI::App* bench = app.add_subcommand("bench", "timing comparison");
  add_common(bench, opt);
  bench->add_option("--counts", opt.bench_points, "evaluation point counts")
      ->delimiter(',');
  bench->add_option("--reps", opt.bench_reps, "repetitions (>= 5)");
  CLI::App* repro = app.add_subcommand(
      "reproduce", "table1|table2|fig_sensitivity|stability");
  add_common(repro, opt);
  repro->add_option("target", opt.reproduce_target, "what to reproduce")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fit->parsed()) return cmd_fit(opt);
    if (ev->parsed()) return cmd_eval(opt);
    if (curv->parsed()) return cmd_curvature(opt);
    if (optm->parsed()) return cmd_optimize(opt);
    if (bench->parsed()) return cmd_bench(opt);
    if (repro->parsed()) return cmd_reproduce(opt);
    return 2;
  } catch (const io::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
