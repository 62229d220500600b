#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "msl/common.hpp"
#include "msl/methods.hpp"
#include "msl/simulate.hpp"

namespace msl {

//! Per-method aggregate over replicates. Component metrics are on the raw
//! unit-vector scale; table emission applies the x1000 convention.
struct MethodReport {
  MethodKind method = MethodKind::Msl;
  Vector bias;
  Vector sd;
  Vector mse;
  bool sd_defined = true;  // false when only one replicate succeeded
  double mean_l2_error = 0.0;
  double roc_l2_mean = 0.0;
  double auc_mean = 0.0;
  double auc_rb_percent = 0.0;
  double auc_mse = 0.0;
  int successes = 0;
  int failures = 0;
};

struct BenchReport {
  ScenarioSpec spec;
  GroundTruth truth;
  std::vector<MethodReport> methods;
  bool valid = true;  // every method kept its failure rate under 2%
};

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MSL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace detail {

struct ReplicateOutcome {
  bool ok = false;
  Vector beta_aligned;
  double roc_l2 = 0.0;
  double auc = 0.0;
};

// Stream layout within a benchmark: stream offset 1 is the oracle, replicate
// r owns offsets (r+1)*8 .. (r+1)*8+7 (slot 0 data, slot 1+k method k).
inline std::uint64_t replicate_stream(const RngSeed& seed, int r, int slot) {
  return seed.stream + static_cast<std::uint64_t>(r + 1) * 8 +
         static_cast<std::uint64_t>(slot);
}

}  // namespace detail

//! Replicated benchmark: generate data, fit each requested method, align the
//! estimated direction sign against the truth, and aggregate component
//! bias/SD/MSE plus ROC and AUC accuracy. Replicates run on independent
//! streams and are reduced in replicate order, so the report does not depend
//! on the thread count.
inline BenchReport run_benchmark(const ScenarioSpec& spec,
                                 const std::vector<MethodKind>& methods,
                                 const FitConfig& base_config, int threads = 0,
                                 int oracle_size = 1000000) {
  require(spec.replicates >= 1, ErrorCode::InvalidArgument, "needs replicates >= 1");
  require(spec.rho > 0.5 && spec.rho <= 1.0, ErrorCode::InvalidArgument,
          "benchmark scenarios need rho in (0.5, 1]");
  require(!methods.empty(), ErrorCode::InvalidArgument, "no methods selected");

  BenchReport report;
  report.spec = spec;
  ScenarioSpec oracle_spec = spec;
  oracle_spec.seed = spec.seed.with_stream(spec.seed.stream + 1);
  report.truth = ground_truth(oracle_spec, oracle_size, base_config.roc_grid_size);

  const int R = spec.replicates;
  const std::size_t M = methods.size();
  std::vector<std::vector<detail::ReplicateOutcome>> outcomes(
      M, std::vector<detail::ReplicateOutcome>(static_cast<std::size_t>(R)));

  auto run_range = [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      Rng data_rng(spec.seed.seed, detail::replicate_stream(spec.seed, r, 0));
      const auto [X, Y] = generate(spec, data_rng);
      for (std::size_t k = 0; k < M; ++k) {
        FitConfig config = base_config;
        config.seed = RngSeed{
            spec.seed.seed,
            detail::replicate_stream(spec.seed, r, 1 + static_cast<int>(k))};
        try {
          const MethodEstimate est = run_method(methods[k], X, Y, config);
          detail::ReplicateOutcome out;
          out.beta_aligned = est.beta_unit.dot(report.truth.beta_true_unit) < 0.0
                                 ? Vector(-est.beta_unit)
                                 : est.beta_unit;
          const RocCurve curve = roc_curve(est.cdf, config.roc_grid_size);
          out.roc_l2 = roc_l2_distance(curve, report.truth.roc_true);
          out.auc = curve.auc;
          out.ok = true;
          outcomes[k][static_cast<std::size_t>(r)] = std::move(out);
        } catch (const Error&) {
          // recorded as a failure and excluded from the aggregates
        }
      }
    }
  };

  const int T = std::min(resolve_thread_count(threads), R);
  if (T <= 1) {
    run_range(0, R);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(T));
    const int chunk = (R + T - 1) / T;
    for (int t = 0; t < T; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(R, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  const int d = example_dim(spec.example);
  for (std::size_t k = 0; k < M; ++k) {
    MethodReport mr;
    mr.method = methods[k];
    Vector err_sum = Vector::Zero(d);
    Vector err_sq_sum = Vector::Zero(d);
    double l2_sum = 0.0, roc_sum = 0.0, auc_sum = 0.0, auc_sq_err = 0.0;
    for (int r = 0; r < R; ++r) {
      const auto& o = outcomes[k][static_cast<std::size_t>(r)];
      if (!o.ok) {
        ++mr.failures;
        continue;
      }
      ++mr.successes;
      const Vector e = o.beta_aligned - report.truth.beta_true_unit;
      err_sum += e;
      err_sq_sum += e.cwiseProduct(e);
      l2_sum += e.norm();
      roc_sum += o.roc_l2;
      auc_sum += o.auc;
      const double ae = o.auc - report.truth.auc_true;
      auc_sq_err += ae * ae;
    }
    require(mr.successes > 0, ErrorCode::TooManyFailures,
            std::string("every replicate failed for method ") + method_name(methods[k]));
    const double S = static_cast<double>(mr.successes);
    mr.bias = err_sum / S;
    mr.mse = err_sq_sum / S;
    if (mr.successes >= 2) {
      // sample variance, divisor S - 1
      Vector var = (err_sq_sum - S * mr.bias.cwiseProduct(mr.bias)) / (S - 1.0);
      mr.sd = var.cwiseMax(0.0).cwiseSqrt();
    } else {
      mr.sd = Vector::Zero(d);
      mr.sd_defined = false;
    }
    mr.mean_l2_error = l2_sum / S;
    mr.roc_l2_mean = roc_sum / S;
    mr.auc_mean = auc_sum / S;
    mr.auc_rb_percent =
        (mr.auc_mean - report.truth.auc_true) / report.truth.auc_true * 100.0;
    mr.auc_mse = auc_sq_err / S;
    if (mr.failures > 0.02 * R) report.valid = false;
    report.methods.push_back(std::move(mr));
  }
  return report;
}

}  // namespace msl
