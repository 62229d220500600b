#pragma once

#include <cmath>
#include <utility>

#include "msl/common.hpp"
#include "msl/rng.hpp"
#include "msl/roc.hpp"

namespace msl {

enum class Example { Ex1, Ex2 };

struct ScenarioSpec {
  Example example = Example::Ex1;
  double rho = 1.0;
  int n = 300;
  int m = 300;
  int replicates = 1000;
  RngSeed seed;
};

//! Truth for a scenario: the optimal direction (unit norm, on the fitting
//! covariate scale) and the oracle ROC/AUC of the optimally combined score.
struct GroundTruth {
  Vector beta_true_unit;
  RocCurve roc_true;
  double auc_true = 0.0;
};

//! Two lognormal-product mixtures, emitted on the (log x1, log x2) scale
//! where the true log density ratio is linear. The diseased group mixes the
//! components with weight rho, the healthy group with weight 1 - rho.
inline std::pair<Matrix, Matrix> generate_ex1(double rho, int n, int m, Rng& rng) {
  require(rho > 0.0 && rho <= 1.0, ErrorCode::InvalidArgument, "rho must be in (0, 1]");
  require(n >= 1 && m >= 1, ErrorCode::InvalidArgument, "n, m must be positive");
  Matrix X(n, 2), Y(m, 2);
  auto draw = [&](bool first_component) {
    // component A: N(0,1) x N(0,1); component B: N(1,1) x N(4,1), log scale
    const double z1 = rng.normal(), z2 = rng.normal();
    return first_component ? std::pair<double, double>{z1, z2}
                           : std::pair<double, double>{1.0 + z1, 4.0 + z2};
  };
  for (int i = 0; i < n; ++i) {
    const auto [w1, w2] = draw(rng.uniform() < rho);
    X(i, 0) = w1;
    X(i, 1) = w2;
  }
  for (int j = 0; j < m; ++j) {
    const auto [w1, w2] = draw(!(rng.uniform() < rho));
    Y(j, 0) = w1;
    Y(j, 1) = w2;
  }
  return {std::move(X), std::move(Y)};
}

//! Normal/normal/gamma mixtures, emitted as (x1, x2, log x3). Component A:
//! N(0,1) x N(0,1) x Gamma(2.5, scale 4); component B: N(1,1) x N(4.5,1) x
//! Gamma(2, scale 4).
inline std::pair<Matrix, Matrix> generate_ex2(double rho, int n, int m, Rng& rng) {
  require(rho > 0.0 && rho <= 1.0, ErrorCode::InvalidArgument, "rho must be in (0, 1]");
  require(n >= 1 && m >= 1, ErrorCode::InvalidArgument, "n, m must be positive");
  Matrix X(n, 3), Y(m, 3);
  auto draw = [&](bool first_component, double* row) {
    if (first_component) {
      row[0] = rng.normal();
      row[1] = rng.normal();
      row[2] = std::log(rng.gamma(2.5, 4.0));
    } else {
      row[0] = 1.0 + rng.normal();
      row[1] = 4.5 + rng.normal();
      row[2] = std::log(rng.gamma(2.0, 4.0));
    }
  };
  double row[3];
  for (int i = 0; i < n; ++i) {
    draw(rng.uniform() < rho, row);
    for (int j = 0; j < 3; ++j) X(i, j) = row[j];
  }
  for (int i = 0; i < m; ++i) {
    draw(!(rng.uniform() < rho), row);
    for (int j = 0; j < 3; ++j) Y(i, j) = row[j];
  }
  return {std::move(X), std::move(Y)};
}

inline std::pair<Matrix, Matrix> generate(const ScenarioSpec& spec, Rng& rng) {
  return spec.example == Example::Ex1 ? generate_ex1(spec.rho, spec.n, spec.m, rng)
                                      : generate_ex2(spec.rho, spec.n, spec.m, rng);
}

inline int example_dim(Example e) { return e == Example::Ex1 ? 2 : 3; }

//! Analytic optimal direction on the fitting scale. Expanding the component
//! log-density differences gives a linear score: Ex1 has
//! (1/2 - log x1) + (8 - 4 log x2), Ex2 has (1/2 - x1) + (81/8 - 4.5 x2) +
//! (1/2) log x3.
inline Vector true_direction_unit(Example e) {
  if (e == Example::Ex1) {
    Vector b(2);
    b << -1.0, -4.0;
    return b / b.norm();
  }
  Vector b(3);
  b << -1.0, -4.5, 0.5;
  return b / b.norm();
}

//! Oracle ROC/AUC by large-sample Monte Carlo of the true score under the two
//! populations; the empirical curve of oracle_size draws per group is sampled
//! on the same grid the estimators use.
inline GroundTruth ground_truth(const ScenarioSpec& spec, int oracle_size,
                                int grid_size) {
  require(oracle_size >= 2, ErrorCode::InvalidArgument, "oracle_size too small");
  GroundTruth truth;
  truth.beta_true_unit = true_direction_unit(spec.example);

  Rng rng(spec.seed);
  auto [X, Y] = spec.example == Example::Ex1
                    ? generate_ex1(spec.rho, oracle_size, oracle_size, rng)
                    : generate_ex2(spec.rho, oracle_size, oracle_size, rng);
  const Vector sx = X * truth.beta_true_unit;
  const Vector sy = Y * truth.beta_true_unit;
  truth.roc_true = roc_curve(empirical_score_cdf(sx, sy), grid_size);
  truth.auc_true = truth.roc_true.auc;
  return truth;
}

}  // namespace msl
