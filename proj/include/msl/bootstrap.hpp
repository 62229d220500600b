#pragma once

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "msl/benchmark.hpp"
#include "msl/common.hpp"
#include "msl/dataset.hpp"
#include "msl/methods.hpp"

namespace msl {

struct BootstrapReport {
  MethodKind method = MethodKind::Msl;
  int requested = 0;  // B
  Vector beta_full;   // full-data estimate the replicates are aligned to
  double auc_full = 0.0;
  Matrix estimates;   // successes x d, sign-aligned unit vectors
  std::vector<double> aucs;
  Vector se;          // component-wise sample SD
  double auc_se = 0.0;
  int failures = 0;
};

//! Stratified resample (within each label group, preserving n and m) indexed
//! by its own stream, then one method fit. Exposed so determinism can be
//! exercised replicate by replicate.
inline MethodEstimate bootstrap_replicate(const Dataset& data, MethodKind method,
                                          const FitConfig& base_config, RngSeed stream) {
  const auto [X, Y] = data.split();
  Rng rng(stream);
  Matrix Xb(X.rows(), X.cols()), Yb(Y.rows(), Y.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    Xb.row(i) = X.row(static_cast<Eigen::Index>(
        rng.uniform_int(static_cast<std::uint64_t>(X.rows()))));
  }
  for (Eigen::Index j = 0; j < Y.rows(); ++j) {
    Yb.row(j) = Y.row(static_cast<Eigen::Index>(
        rng.uniform_int(static_cast<std::uint64_t>(Y.rows()))));
  }
  FitConfig config = base_config;
  config.seed = stream.with_stream(stream.stream + 1);
  return run_method(method, Xb, Yb, config);
}

//! Bootstrap standard errors: refit on B stratified resamples, align each
//! replicate direction to the full-data estimate, and report component-wise
//! sample SDs plus the AUC SD. Replicates run on independent streams; more
//! than 5% failures aborts.
inline BootstrapReport bootstrap_se(const Dataset& data, MethodKind method,
                                    const FitConfig& base_config, int B,
                                    int threads = 0) {
  require(B >= 2, ErrorCode::InvalidArgument, "need B >= 2");
  data.validate();

  BootstrapReport report;
  report.method = method;
  report.requested = B;

  const auto [X, Y] = data.split();
  const MethodEstimate full = run_method(method, X, Y, base_config);
  report.beta_full = full.beta_unit;
  report.auc_full = roc_curve(full.cdf, base_config.roc_grid_size).auc;

  const int d = static_cast<int>(data.features.cols());
  struct Outcome {
    bool ok = false;
    Vector beta;
    double auc = 0.0;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(B));

  // replicate b owns streams base + (b+1)*2 and base + (b+1)*2 + 1
  auto run_range = [&](int lo, int hi) {
    for (int b = lo; b < hi; ++b) {
      const RngSeed stream = base_config.seed.with_stream(
          base_config.seed.stream + static_cast<std::uint64_t>(b + 1) * 2);
      try {
        const MethodEstimate est = bootstrap_replicate(data, method, base_config, stream);
        Outcome out;
        out.beta = est.beta_unit.dot(report.beta_full) < 0.0 ? Vector(-est.beta_unit)
                                                             : est.beta_unit;
        out.auc = roc_curve(est.cdf, base_config.roc_grid_size).auc;
        out.ok = true;
        outcomes[static_cast<std::size_t>(b)] = std::move(out);
      } catch (const Error&) {
      }
    }
  };

  const int T = std::min(resolve_thread_count(threads), B);
  if (T <= 1) {
    run_range(0, B);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (B + T - 1) / T;
    for (int t = 0; t < T; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(B, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  int successes = 0;
  for (const auto& o : outcomes) successes += o.ok ? 1 : 0;
  report.failures = B - successes;
  require(report.failures <= 0.05 * B, ErrorCode::TooManyFailures,
          std::to_string(report.failures) + " of " + std::to_string(B) +
              " bootstrap replicates failed");

  report.estimates.resize(successes, d);
  report.aucs.reserve(static_cast<std::size_t>(successes));
  int row = 0;
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    report.estimates.row(row++) = o.beta;
    report.aucs.push_back(o.auc);
  }

  report.se = Vector::Zero(d);
  const double S = static_cast<double>(successes);
  for (int j = 0; j < d; ++j) {
    const double mean = report.estimates.col(j).mean();
    const double ss = (report.estimates.col(j).array() - mean).square().sum();
    report.se[j] = std::sqrt(ss / (S - 1.0));
  }
  double auc_mean = 0.0;
  for (double a : report.aucs) auc_mean += a;
  auc_mean /= S;
  double auc_ss = 0.0;
  for (double a : report.aucs) auc_ss += (a - auc_mean) * (a - auc_mean);
  report.auc_se = std::sqrt(auc_ss / (S - 1.0));
  return report;
}

}  // namespace msl
