// Command-line front end: fit / roc / simulate / bootstrap / bench.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msl/msl.hpp"

namespace {

using namespace msl;

struct CommonOptions {
  std::string config_path;
  std::uint64_t seed = 20250901ull;
  std::uint64_t stream = 0;
  bool seed_given = false;
  bool stream_given = false;
  std::string kernel;
  double bandwidth_multiplier = 0.0;  // 0 = keep config/default
  int mc_points = 0;
  int multistarts = 0;
  int grid = 0;
  int threads = 0;
  std::vector<double> bandwidth_f, bandwidth_g;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON config file");
  cmd->add_option("--seed", opts.seed, "RNG seed")->each([&](const std::string&) {
    opts.seed_given = true;
  });
  cmd->add_option("--stream", opts.stream, "RNG stream id")->each([&](const std::string&) {
    opts.stream_given = true;
  });
  cmd->add_option("--kernel", opts.kernel, "epanechnikov|triweight|gaussian");
  cmd->add_option("--bandwidth-multiplier", opts.bandwidth_multiplier,
                  "scale factor on the reference bandwidths");
  cmd->add_option("--bandwidth-f", opts.bandwidth_f, "explicit diseased-group bandwidths")
      ->delimiter(',');
  cmd->add_option("--bandwidth-g", opts.bandwidth_g, "explicit healthy-group bandwidths")
      ->delimiter(',');
  cmd->add_option("--mc-points", opts.mc_points, "Monte Carlo cloud half-size N");
  cmd->add_option("--multistarts", opts.multistarts, "optimizer restarts per sign");
  cmd->add_option("--grid", opts.grid, "ROC grid size");
  cmd->add_option("--threads", opts.threads, "worker threads (default: MSL_THREADS or all)");
}

FitConfig resolve_config(const CommonOptions& opts) {
  FitConfig cfg;
  if (!opts.config_path.empty()) cfg = fit_config_from_json(opts.config_path);
  if (opts.seed_given) cfg.seed.seed = opts.seed;
  if (opts.stream_given) cfg.seed.stream = opts.stream;
  if (!opts.kernel.empty()) cfg.kernel = Kernel::from_name(opts.kernel).family();
  if (opts.bandwidth_multiplier > 0.0) cfg.bandwidth_multiplier = opts.bandwidth_multiplier;
  if (!opts.bandwidth_f.empty()) cfg.bandwidth_f = opts.bandwidth_f;
  if (!opts.bandwidth_g.empty()) cfg.bandwidth_g = opts.bandwidth_g;
  if (opts.mc_points > 0) cfg.n_monte_carlo = opts.mc_points;
  if (opts.multistarts > 0) cfg.multistarts = opts.multistarts;
  if (opts.grid > 1) cfg.roc_grid_size = opts.grid;
  return cfg;
}

struct DataOptions {
  std::string data_path;
  bool pancreatic = false;
  std::string label_column = "label";
  std::vector<std::string> feature_columns;
  std::string example;
  double rho = 1.0;
  int n = 300;
  int m = 300;
};

void add_data_options(CLI::App* cmd, DataOptions& opts, bool allow_generator) {
  cmd->add_option("--data", opts.data_path, "input CSV");
  cmd->add_flag("--pancreatic", opts.pancreatic,
                "use the urinary-biomarker schema (cohort filter, diagnosis mapping, "
                "LYVE1 x100)");
  cmd->add_option("--label-col", opts.label_column, "0/1 label column for generic CSVs");
  cmd->add_option("--features", opts.feature_columns, "feature columns for generic CSVs")
      ->delimiter(',');
  if (allow_generator) {
    cmd->add_option("--example", opts.example, "generator instead of --data: ex1|ex2");
    cmd->add_option("--rho", opts.rho, "generator mixing weight in (0.5, 1]");
    cmd->add_option("--n", opts.n, "diseased sample size");
    cmd->add_option("--m", opts.m, "healthy sample size");
  }
}

Example example_from_name(const std::string& s) {
  if (s == "ex1") return Example::Ex1;
  if (s == "ex2") return Example::Ex2;
  fail(ErrorCode::InvalidArgument, "unknown example '" + s + "' (want ex1 or ex2)");
}

Dataset resolve_dataset(const DataOptions& data, const FitConfig& cfg) {
  if (!data.data_path.empty()) {
    if (data.pancreatic) return ingest_pancreatic_csv(data.data_path);
    return load_labeled_csv(data.data_path, data.label_column, data.feature_columns);
  }
  require(!data.example.empty(), ErrorCode::InvalidArgument,
          "either --data or --example is required");
  Rng rng(cfg.seed);
  const Example ex = example_from_name(data.example);
  const auto [X, Y] = ex == Example::Ex1 ? generate_ex1(data.rho, data.n, data.m, rng)
                                         : generate_ex2(data.rho, data.n, data.m, rng);
  Dataset ds;
  ds.features.resize(X.rows() + Y.rows(), X.cols());
  ds.features.topRows(X.rows()) = X;
  ds.features.bottomRows(Y.rows()) = Y;
  ds.labels.assign(static_cast<std::size_t>(X.rows() + Y.rows()), 0);
  for (Eigen::Index i = 0; i < X.rows(); ++i) ds.labels[static_cast<std::size_t>(i)] = 1;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    ds.feature_names.push_back("x" + std::to_string(j + 1));
  }
  ds.provenance = "generated " + data.example;
  return ds;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  const std::size_t dot = out.find_last_of('.');
  const std::size_t slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + suffix;
  }
  return out.substr(0, dot) + suffix;
}

FitPackage package_from_method(MethodKind method, const Matrix& X, const Matrix& Y,
                               const FitConfig& cfg) {
  FitPackage pkg;
  pkg.method = method_name(method);
  pkg.n = static_cast<int>(X.rows());
  pkg.m = static_cast<int>(Y.rows());
  pkg.d = static_cast<int>(X.cols());
  pkg.lambda = static_cast<double>(X.rows()) / static_cast<double>(X.rows() + Y.rows());
  if (method == MethodKind::Msl) {
    const FitResult fr = fit(X, Y, cfg);
    pkg.beta_raw = fr.beta_hat;
    pkg.beta_unit = fr.beta_unit;
    pkg.has_profile = true;
    pkg.profile_ll = fr.profile_ll;
    pkg.theta_knots = fr.theta_hat.knots();
    pkg.theta_values = fr.theta_hat.values();
    pkg.cdf = score_cdfs(fr);
    pkg.starts = fr.diagnostics.starts;
    pkg.iterations = fr.diagnostics.nm_iterations;
    pkg.evaluations = fr.diagnostics.objective_evaluations;
  } else {
    const BaselineResult br =
        method == MethodKind::ExpTilting ? fit_exp_tilting(X, Y) : fit_mh_auc(X, Y);
    pkg.beta_unit = br.beta_unit;
    if (method == MethodKind::ExpTilting) {
      pkg.has_intercept = true;
      pkg.intercept = br.intercept;
    }
    pkg.cdf = empirical_score_cdf(X * br.beta_unit, Y * br.beta_unit);
    pkg.iterations = br.diagnostics.iterations;
    pkg.evaluations = br.diagnostics.evaluations;
  }
  pkg.auc = roc_curve(pkg.cdf, cfg.roc_grid_size).auc;
  return pkg;
}

int run_fit(const CommonOptions& common, const DataOptions& data,
            const std::string& method, const std::string& out) {
  const FitConfig base = resolve_config(common);
  const Dataset ds = resolve_dataset(data, base);
  ds.validate();
  const auto [X, Y] = ds.split();

  // generated data consumed the base stream; the fit gets the next one
  FitConfig fit_cfg = base;
  if (data.data_path.empty()) {
    fit_cfg.seed = base.seed.with_stream(base.seed.stream + 1);
  }
  const MethodKind kind = method_from_name(method);
  const FitPackage pkg = package_from_method(kind, X, Y, fit_cfg);
  write_fit_json(out, pkg);
  if (!pkg.theta_knots.empty()) {
    write_theta_csv(sibling_path(out, ".theta.csv"), pkg.theta_knots, pkg.theta_values);
  }
  std::cout << "method " << pkg.method << "\nn " << pkg.n << "\nm " << pkg.m << "\nbeta_unit";
  for (Eigen::Index j = 0; j < pkg.beta_unit.size(); ++j) {
    std::cout << ' ' << fmt17(pkg.beta_unit[j]);
  }
  std::cout << "\nauc " << fmt17(pkg.auc) << "\n";
  return 0;
}

int run_roc(const std::string& fit_path, const std::string& out, int grid) {
  const FitPackage pkg = read_fit_json(fit_path);
  const RocCurve curve = roc_curve(pkg.cdf, grid > 1 ? grid : 1001);
  write_roc_csv(out, curve);
  std::cout << "auc " << fmt17(curve.auc) << "\n";
  return 0;
}

int run_simulate(const CommonOptions& common, const std::string& example, double rho,
                 int n, int m, const std::string& out) {
  const FitConfig cfg = resolve_config(common);
  Rng rng(cfg.seed);
  const Example ex = example_from_name(example);
  const auto [X, Y] = ex == Example::Ex1 ? generate_ex1(rho, n, m, rng)
                                         : generate_ex2(rho, n, m, rng);
  write_labeled_csv(out, X, Y);
  std::cout << "wrote " << (n + m) << " rows to " << out << "\n";
  return 0;
}

int run_bootstrap(const CommonOptions& common, const DataOptions& data,
                  const std::string& method, int B, const std::string& out) {
  const FitConfig cfg = resolve_config(common);
  const Dataset ds = resolve_dataset(data, cfg);
  const BootstrapReport report =
      bootstrap_se(ds, method_from_name(method), cfg, B, common.threads);
  write_bootstrap_json(out, report, ds.feature_names);
  std::cout << "beta_unit";
  for (Eigen::Index j = 0; j < report.beta_full.size(); ++j) {
    std::cout << ' ' << fmt17(report.beta_full[j]);
  }
  std::cout << "\nse";
  for (Eigen::Index j = 0; j < report.se.size(); ++j) {
    std::cout << ' ' << fmt17(report.se[j]);
  }
  std::cout << "\nauc " << fmt17(report.auc_full) << "\nauc_se " << fmt17(report.auc_se)
            << "\nfailures " << report.failures << "\n";
  return 0;
}

int run_bench(const CommonOptions& common, const std::string& example, double rho, int n,
              int m, int replicates, const std::string& methods_arg,
              const std::string& out) {
  const FitConfig cfg = resolve_config(common);
  ScenarioSpec spec;
  spec.example = example_from_name(example);
  spec.rho = rho;
  spec.n = n;
  spec.m = m;
  spec.replicates = replicates;
  spec.seed = cfg.seed;

  std::vector<MethodKind> methods;
  std::string token;
  for (char c : methods_arg + ",") {
    if (c == ',') {
      if (!token.empty()) methods.push_back(method_from_name(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }

  const BenchReport report = run_benchmark(spec, methods, cfg, common.threads);
  write_bench_csv(out + ".csv", report);
  write_bench_json(out + ".json", report);
  for (const auto& mr : report.methods) {
    std::cout << method_name(mr.method) << " mean_l2_error " << fmt17(mr.mean_l2_error)
              << " roc_l2_mean " << fmt17(mr.roc_l2_mean) << " auc_rb_percent "
              << fmt17(mr.auc_rb_percent) << " failures " << mr.failures << "\n";
  }
  if (!report.valid) {
    std::cerr << "warning: failure rate above 2% in at least one method\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biomarker combination under a monotone density ratio model"};
  app.require_subcommand(1);

  CommonOptions common;
  DataOptions data;
  std::string method = "msl";
  std::string out = "fit.json";
  std::string fit_path;
  std::string example = "ex1";
  double rho = 1.0;
  int n = 300, m = 300, B = 300, replicates = 100, grid = 0;
  std::string methods_arg = "msl";

  auto* fit_cmd = app.add_subcommand("fit", "fit one model and write a fit file");
  add_common_options(fit_cmd, common);
  add_data_options(fit_cmd, data, true);
  fit_cmd->add_option("--method", method, "msl|exp_tilting|mh");
  fit_cmd->add_option("--out", out, "output fit JSON")->required();

  auto* roc_cmd = app.add_subcommand("roc", "ROC curve and AUC from a fit file");
  roc_cmd->add_option("--fit", fit_path, "fit JSON written by the fit command")->required();
  roc_cmd->add_option("--out", out, "output (s, roc) CSV")->required();
  roc_cmd->add_option("--grid", grid, "grid size (default 1001)");

  auto* sim_cmd = app.add_subcommand("simulate", "emit a generated dataset");
  add_common_options(sim_cmd, common);
  sim_cmd->add_option("--example", example, "ex1|ex2")->required();
  sim_cmd->add_option("--rho", rho, "mixing weight in (0, 1]");
  sim_cmd->add_option("--n", n, "diseased sample size");
  sim_cmd->add_option("--m", m, "healthy sample size");
  sim_cmd->add_option("--out", out, "output CSV")->required();

  auto* boot_cmd = app.add_subcommand("bootstrap", "stratified bootstrap standard errors");
  add_common_options(boot_cmd, common);
  add_data_options(boot_cmd, data, false);
  boot_cmd->add_option("--method", method, "msl|exp_tilting|mh");
  boot_cmd->add_option("--B", B, "bootstrap replicates");
  boot_cmd->add_option("--out", out, "output report JSON")->required();

  auto* bench_cmd = app.add_subcommand("bench", "replicated simulation benchmark");
  add_common_options(bench_cmd, common);
  bench_cmd->add_option("--example", example, "ex1|ex2")->required();
  bench_cmd->add_option("--rho", rho, "mixing weight in (0.5, 1]");
  bench_cmd->add_option("--n", n, "diseased sample size");
  bench_cmd->add_option("--m", m, "healthy sample size");
  bench_cmd->add_option("--replicates", replicates, "replicate count");
  bench_cmd->add_option("--methods", methods_arg, "comma-separated method list");
  bench_cmd->add_option("--out", out, "output prefix (.csv and .json appended)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(common, data, method, out);
    if (roc_cmd->parsed()) return run_roc(fit_path, out, grid);
    if (sim_cmd->parsed()) return run_simulate(common, example, rho, n, m, out);
    if (boot_cmd->parsed()) return run_bootstrap(common, data, method, B, out);
    if (bench_cmd->parsed()) {
      return run_bench(common, example, rho, n, m, replicates, methods_arg, out);
    }
  } catch (const msl::Error& e) {
    std::cerr << "error code=" << msl::error_code_name(e.code()) << " message=\""
              << e.what() << "\"\n";
    return msl::error_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error code=Internal message=\"" << e.what() << "\"\n";
    return 3;
  }
  return 1;
}
