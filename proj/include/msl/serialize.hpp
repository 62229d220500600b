#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "msl/benchmark.hpp"
#include "msl/bootstrap.hpp"
#include "msl/common.hpp"
#include "msl/estimator.hpp"
#include "msl/roc.hpp"
#include "msl/step_function.hpp"

namespace msl {

//! 17 significant digits: doubles survive a write/read round trip exactly.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline void write_double_array(std::ostream& out, const char* key,
                               const double* data, std::size_t size,
                               const char* indent) {
  out << indent << '"' << key << "\": [";
  for (std::size_t i = 0; i < size; ++i) {
    if (i) out << ", ";
    out << fmt17(data[i]);
  }
  out << ']';
}

inline void write_double_array(std::ostream& out, const char* key,
                               const std::vector<double>& v, const char* indent) {
  write_double_array(out, key, v.data(), v.size(), indent);
}

inline void write_double_array(std::ostream& out, const char* key, const Vector& v,
                               const char* indent) {
  write_double_array(out, key, v.data(), static_cast<std::size_t>(v.size()), indent);
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::ParseError, "cannot write '" + path + "'");
  return out;
}

}  // namespace detail

//! Everything one fitted model needs on disk: enough to redraw the ROC curve
//! and AUC without refitting.
struct FitPackage {
  std::string method;
  int n = 0, m = 0, d = 0;
  double lambda = 0.0;
  Vector beta_raw;   // msl only (first component +/-1)
  Vector beta_unit;
  bool has_intercept = false;
  double intercept = 0.0;
  bool has_profile = false;
  double profile_ll = 0.0;
  std::vector<double> theta_knots;   // msl only
  std::vector<double> theta_values;
  ScoreCdf cdf;
  double auc = 0.0;
  int starts = 0, iterations = 0, evaluations = 0;
};

inline void write_fit_json(const std::string& path, const FitPackage& pkg) {
  auto out = detail::open_out(path);
  out << "{\n";
  out << "  \"method\": \"" << pkg.method << "\",\n";
  out << "  \"n\": " << pkg.n << ",\n";
  out << "  \"m\": " << pkg.m << ",\n";
  out << "  \"d\": " << pkg.d << ",\n";
  out << "  \"lambda\": " << fmt17(pkg.lambda) << ",\n";
  if (pkg.beta_raw.size() > 0) {
    detail::write_double_array(out, "beta_raw", pkg.beta_raw, "  ");
    out << ",\n";
  }
  detail::write_double_array(out, "beta_unit", pkg.beta_unit, "  ");
  out << ",\n";
  if (pkg.has_intercept) out << "  \"intercept\": " << fmt17(pkg.intercept) << ",\n";
  if (pkg.has_profile) out << "  \"profile_loglik\": " << fmt17(pkg.profile_ll) << ",\n";
  out << "  \"auc\": " << fmt17(pkg.auc) << ",\n";
  if (!pkg.theta_knots.empty()) {
    out << "  \"theta\": {\n";
    detail::write_double_array(out, "knots", pkg.theta_knots, "    ");
    out << ",\n";
    detail::write_double_array(out, "values", pkg.theta_values, "    ");
    out << "\n  },\n";
  }
  out << "  \"score_cdf\": {\n";
  detail::write_double_array(out, "thresholds", pkg.cdf.thresholds, "    ");
  out << ",\n";
  detail::write_double_array(out, "fc", pkg.cdf.fc, "    ");
  out << ",\n";
  detail::write_double_array(out, "gc", pkg.cdf.gc, "    ");
  out << "\n  },\n";
  out << "  \"diagnostics\": {\"starts\": " << pkg.starts
      << ", \"iterations\": " << pkg.iterations
      << ", \"evaluations\": " << pkg.evaluations << "}\n";
  out << "}\n";
}

inline FitPackage read_fit_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, "invalid fit file '" + path + "': " + e.what());
  }
  FitPackage pkg;
  try {
    pkg.method = j.at("method").get<std::string>();
    pkg.n = j.value("n", 0);
    pkg.m = j.value("m", 0);
    pkg.d = j.value("d", 0);
    pkg.lambda = j.value("lambda", 0.0);
    auto to_vector = [](const nlohmann::json& arr) {
      Vector v(arr.size());
      for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i];
      return v;
    };
    pkg.beta_unit = to_vector(j.at("beta_unit"));
    if (j.contains("beta_raw")) pkg.beta_raw = to_vector(j["beta_raw"]);
    if (j.contains("intercept")) {
      pkg.has_intercept = true;
      pkg.intercept = j["intercept"];
    }
    if (j.contains("profile_loglik")) {
      pkg.has_profile = true;
      pkg.profile_ll = j["profile_loglik"];
    }
    pkg.auc = j.value("auc", 0.0);
    if (j.contains("theta")) {
      pkg.theta_knots = j["theta"]["knots"].get<std::vector<double>>();
      pkg.theta_values = j["theta"]["values"].get<std::vector<double>>();
    }
    const auto& cdf = j.at("score_cdf");
    pkg.cdf.thresholds = cdf.at("thresholds").get<std::vector<double>>();
    pkg.cdf.fc = cdf.at("fc").get<std::vector<double>>();
    pkg.cdf.gc = cdf.at("gc").get<std::vector<double>>();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, "fit file '" + path + "' is missing fields: " + e.what());
  }
  return pkg;
}

//! Two-column (knot, value) table.
inline void write_theta_csv(const std::string& path, const std::vector<double>& knots,
                            const std::vector<double>& values) {
  auto out = detail::open_out(path);
  out << "knot,value\n";
  for (std::size_t i = 0; i < knots.size(); ++i) {
    out << fmt17(knots[i]) << ',' << fmt17(values[i]) << '\n';
  }
}

//! (s, roc) samples with the AUC pinned in a comment header.
inline void write_roc_csv(const std::string& path, const RocCurve& curve) {
  auto out = detail::open_out(path);
  out << "# auc = " << fmt17(curve.auc) << '\n';
  out << "s,roc\n";
  for (std::size_t i = 0; i < curve.s.size(); ++i) {
    out << fmt17(curve.s[i]) << ',' << fmt17(curve.roc[i]) << '\n';
  }
}

//! Generated datasets: feature columns then a 0/1 label column.
inline void write_labeled_csv(const std::string& path, const Matrix& X, const Matrix& Y) {
  auto out = detail::open_out(path);
  for (Eigen::Index j = 0; j < X.cols(); ++j) out << 'x' << (j + 1) << ',';
  out << "label\n";
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) out << fmt17(X(i, j)) << ',';
    out << "1\n";
  }
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    for (Eigen::Index j = 0; j < Y.cols(); ++j) out << fmt17(Y(i, j)) << ',';
    out << "0\n";
  }
}

inline void write_bootstrap_json(const std::string& path, const BootstrapReport& report,
                                 const std::vector<std::string>& feature_names) {
  auto out = detail::open_out(path);
  out << "{\n";
  out << "  \"method\": \"" << method_name(report.method) << "\",\n";
  out << "  \"replicates\": " << report.requested << ",\n";
  out << "  \"failures\": " << report.failures << ",\n";
  out << "  \"features\": [";
  for (std::size_t i = 0; i < feature_names.size(); ++i) {
    if (i) out << ", ";
    out << '"' << feature_names[i] << '"';
  }
  out << "],\n";
  detail::write_double_array(out, "beta_unit", report.beta_full, "  ");
  out << ",\n";
  detail::write_double_array(out, "se", report.se, "  ");
  out << ",\n";
  out << "  \"auc\": " << fmt17(report.auc_full) << ",\n";
  out << "  \"auc_se\": " << fmt17(report.auc_se) << "\n";
  out << "}\n";
}

//! Table-shaped CSV: one row per (method, component) with the x1000 metric
//! convention, followed by one ROC/AUC row per method.
inline void write_bench_csv(const std::string& path, const BenchReport& report) {
  auto out = detail::open_out(path);
  out << "method,component,bias_x1000,sd_x1000,mse_x1000\n";
  for (const auto& mr : report.methods) {
    for (Eigen::Index j = 0; j < mr.bias.size(); ++j) {
      out << method_name(mr.method) << ",beta" << (j + 1) << ','
          << fmt17(mr.bias[j] * 1000.0) << ',' << fmt17(mr.sd[j] * 1000.0) << ','
          << fmt17(mr.mse[j] * 1000.0) << '\n';
    }
  }
  out << "method,roc_l2_x1000,auc_rb_percent,auc_mse_x1000,failures\n";
  for (const auto& mr : report.methods) {
    out << method_name(mr.method) << ',' << fmt17(mr.roc_l2_mean * 1000.0) << ','
        << fmt17(mr.auc_rb_percent) << ',' << fmt17(mr.auc_mse * 1000.0) << ','
        << mr.failures << '\n';
  }
}

inline void write_bench_json(const std::string& path, const BenchReport& report) {
  auto out = detail::open_out(path);
  out << "{\n";
  out << "  \"example\": \"" << (report.spec.example == Example::Ex1 ? "ex1" : "ex2")
      << "\",\n";
  out << "  \"rho\": " << fmt17(report.spec.rho) << ",\n";
  out << "  \"n\": " << report.spec.n << ",\n";
  out << "  \"m\": " << report.spec.m << ",\n";
  out << "  \"replicates\": " << report.spec.replicates << ",\n";
  out << "  \"auc_true\": " << fmt17(report.truth.auc_true) << ",\n";
  detail::write_double_array(out, "beta_true_unit", report.truth.beta_true_unit, "  ");
  out << ",\n";
  out << "  \"valid\": " << (report.valid ? "true" : "false") << ",\n";
  out << "  \"methods\": [\n";
  for (std::size_t k = 0; k < report.methods.size(); ++k) {
    const auto& mr = report.methods[k];
    out << "    {\n";
    out << "      \"method\": \"" << method_name(mr.method) << "\",\n";
    detail::write_double_array(out, "bias", mr.bias, "      ");
    out << ",\n";
    detail::write_double_array(out, "sd", mr.sd, "      ");
    out << ",\n";
    detail::write_double_array(out, "mse", mr.mse, "      ");
    out << ",\n";
    out << "      \"sd_defined\": " << (mr.sd_defined ? "true" : "false") << ",\n";
    out << "      \"mean_l2_error\": " << fmt17(mr.mean_l2_error) << ",\n";
    out << "      \"roc_l2_mean\": " << fmt17(mr.roc_l2_mean) << ",\n";
    out << "      \"auc_mean\": " << fmt17(mr.auc_mean) << ",\n";
    out << "      \"auc_rb_percent\": " << fmt17(mr.auc_rb_percent) << ",\n";
    out << "      \"auc_mse\": " << fmt17(mr.auc_mse) << ",\n";
    out << "      \"successes\": " << mr.successes << ",\n";
    out << "      \"failures\": " << mr.failures << "\n";
    out << "    }" << (k + 1 < report.methods.size() ? "," : "") << "\n";
  }
  out << "  ]\n";
  out << "}\n";
}

//! Optional JSON config file; unknown keys are rejected so typos surface.
inline FitConfig fit_config_from_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, "invalid config '" + path + "': " + e.what());
  }
  FitConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "kernel") cfg.kernel = Kernel::from_name(value.get<std::string>()).family();
    else if (key == "bandwidth_multiplier") cfg.bandwidth_multiplier = value;
    else if (key == "bandwidth_f") cfg.bandwidth_f = value.get<std::vector<double>>();
    else if (key == "bandwidth_g") cfg.bandwidth_g = value.get<std::vector<double>>();
    else if (key == "n_monte_carlo") cfg.n_monte_carlo = value;
    else if (key == "nm_tol") cfg.nm_tol = value;
    else if (key == "nm_max_iter_factor") cfg.nm_max_iter_factor = value;
    else if (key == "multistarts") cfg.multistarts = value;
    else if (key == "b_max") cfg.b_max = value;
    else if (key == "roc_grid_size") cfg.roc_grid_size = value;
    else if (key == "seed") cfg.seed.seed = value.get<std::uint64_t>();
    else if (key == "stream") cfg.seed.stream = value.get<std::uint64_t>();
    else fail(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
  return cfg;
}

}  // namespace msl
