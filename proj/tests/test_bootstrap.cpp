#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "msl/bootstrap.hpp"
#include "msl/simulate.hpp"

using namespace msl;

namespace {

Dataset synthetic_dataset(int n, int m, std::uint64_t stream = 0) {
  Rng rng(111, stream);
  auto [X, Y] = generate_ex1(0.9, n, m, rng);
  Dataset ds;
  ds.features.resize(n + m, 2);
  ds.features.topRows(n) = X;
  ds.features.bottomRows(m) = Y;
  ds.labels.assign(static_cast<std::size_t>(n + m), 0);
  for (int i = 0; i < n; ++i) ds.labels[static_cast<std::size_t>(i)] = 1;
  ds.feature_names = {"w1", "w2"};
  return ds;
}

}  // namespace

TEST_CASE("replicates with the same stream coincide, so their SE is zero") {
  const Dataset ds = synthetic_dataset(40, 50);
  FitConfig cfg;
  cfg.n_monte_carlo = 300;
  const RngSeed stream{7, 42};
  const MethodEstimate a = bootstrap_replicate(ds, MethodKind::ExpTilting, cfg, stream);
  const MethodEstimate b = bootstrap_replicate(ds, MethodKind::ExpTilting, cfg, stream);
  REQUIRE(a.beta_unit == b.beta_unit);
  // two identical estimates give sample SD exactly zero
  for (int j = 0; j < 2; ++j) {
    const double mean = 0.5 * (a.beta_unit[j] + b.beta_unit[j]);
    const double ss = (a.beta_unit[j] - mean) * (a.beta_unit[j] - mean) +
                      (b.beta_unit[j] - mean) * (b.beta_unit[j] - mean);
    REQUIRE(std::sqrt(ss) == 0.0);
  }
}

TEST_CASE("bootstrap report: determinism, alignment and positive SE") {
  const Dataset ds = synthetic_dataset(60, 70);
  FitConfig cfg;
  cfg.n_monte_carlo = 300;
  cfg.seed = RngSeed{8, 0};
  const BootstrapReport a = bootstrap_se(ds, MethodKind::ExpTilting, cfg, 16, 1);
  REQUIRE(a.failures == 0);
  REQUIRE(a.estimates.rows() == 16);
  for (int j = 0; j < 2; ++j) REQUIRE(a.se[j] > 0.0);
  REQUIRE(a.auc_se >= 0.0);
  // every kept replicate is aligned to the full-data estimate
  for (Eigen::Index b = 0; b < a.estimates.rows(); ++b) {
    REQUIRE(a.estimates.row(b).dot(a.beta_full) >= 0.0);
  }

  const BootstrapReport b = bootstrap_se(ds, MethodKind::ExpTilting, cfg, 16, 3);
  REQUIRE(a.estimates == b.estimates);
  REQUIRE(a.se == b.se);
  REQUIRE(a.auc_se == b.auc_se);
}

TEST_CASE("msl bootstrap on a small dataset") {
  const Dataset ds = synthetic_dataset(50, 50, 3);
  FitConfig cfg;
  cfg.n_monte_carlo = 250;
  cfg.multistarts = 2;
  cfg.roc_grid_size = 201;
  cfg.seed = RngSeed{9, 0};
  const BootstrapReport report = bootstrap_se(ds, MethodKind::Msl, cfg, 8, 1);
  REQUIRE(report.failures == 0);
  REQUIRE(report.aucs.size() == 8);
  REQUIRE(report.auc_full > 0.5);
  for (int j = 0; j < 2; ++j) REQUIRE(report.se[j] >= 0.0);
}

TEST_CASE("too many failures abort the bootstrap") {
  // column 2 is binary with the rare level on one row per group; resamples
  // frequently lose a level, leaving the pooled column constant (rank
  // deficient) or one-sided (separated), and either way the refit fails
  Dataset ds;
  const int n = 6, m = 6;
  ds.features.resize(n + m, 2);
  Rng rng(112, 0);
  for (int i = 0; i < n + m; ++i) {
    ds.features(i, 0) = rng.normal();
    ds.features(i, 1) = i < n ? 0.0 : 1.0;
  }
  ds.features(0, 1) = 1.0;      // one diseased row at the healthy-typical level
  ds.features(n, 1) = 0.0;      // and vice versa
  ds.labels.assign(static_cast<std::size_t>(n + m), 0);
  for (int i = 0; i < n; ++i) ds.labels[static_cast<std::size_t>(i)] = 1;
  ds.feature_names = {"a", "b"};

  FitConfig cfg;
  cfg.seed = RngSeed{10, 0};
  try {
    bootstrap_se(ds, MethodKind::ExpTilting, cfg, 60, 1);
    FAIL("expected TooManyFailures");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::TooManyFailures);
  }
}

TEST_CASE("B below 2 is rejected") {
  const Dataset ds = synthetic_dataset(20, 20);
  FitConfig cfg;
  REQUIRE_THROWS_AS(bootstrap_se(ds, MethodKind::ExpTilting, cfg, 1, 1), Error);
}
