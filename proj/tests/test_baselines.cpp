#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "msl/baselines.hpp"
#include "msl/simulate.hpp"

using namespace msl;

TEST_CASE("exponential tilting matches the IRLS oracle on small data") {
  for (std::uint64_t stream = 0; stream < 5; ++stream) {
    Rng rng(71, stream);
    const int n = 90, m = 100;
    Matrix X(n, 2), Y(m, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      X(i, 0) = 0.8 + rng.normal();
      X(i, 1) = 0.4 + rng.normal();
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      Y(i, 0) = rng.normal();
      Y(i, 1) = rng.normal();
    }
    const BaselineResult fit = fit_exp_tilting(X, Y);

    Matrix design(n + m, 3);
    design.col(0).setOnes();
    design.block(0, 1, n, 2) = X;
    design.block(n, 1, m, 2) = Y;
    Vector y = Vector::Zero(n + m);
    y.head(n).setOnes();
    const Vector oracle = testing::irls_logistic(design, y);

    const Vector slope = oracle.tail(2);
    const Vector unit = slope / slope.norm();
    for (int j = 0; j < 2; ++j) {
      REQUIRE(fit.beta_unit[j] == Catch::Approx(unit[j]).margin(1e-6));
    }
    REQUIRE(fit.intercept ==
            Catch::Approx(oracle[0] - std::log(static_cast<double>(n) / m)).margin(1e-6));
    REQUIRE(fit.beta_unit.norm() == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("identical groups give a zero slope and the unstable flag") {
  Rng rng(72, 0);
  Matrix X(40, 2);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = rng.normal();
  }
  const BaselineResult fit = fit_exp_tilting(X, X);
  REQUIRE(fit.diagnostics.unstable_normalization);
  REQUIRE(fit.beta_unit.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("exp tilting recovers the Example 1 direction when correctly specified") {
  const Vector truth = true_direction_unit(Example::Ex1);
  std::vector<double> errors;
  for (std::uint64_t stream = 0; stream < 21; ++stream) {
    Rng rng(73, stream);
    auto [X, Y] = generate_ex1(1.0, 600, 600, rng);
    Vector est = fit_exp_tilting(X, Y).beta_unit;
    if (est.dot(truth) < 0.0) est = -est;
    errors.push_back((est - truth).norm());
  }
  REQUIRE(testing::median_of(errors) < 0.1);
}

TEST_CASE("separation is detected") {
  // groups on either side of zero at a small scale, so the diverging slope
  // crosses the norm threshold within the iteration budget
  Matrix X(10, 1), Y(10, 1);
  for (int i = 0; i < 10; ++i) {
    X(i, 0) = (10.0 + i) / 1000.0;
    Y(i, 0) = -(10.0 + i) / 1000.0;
  }
  REQUIRE_THROWS_AS(fit_exp_tilting(X, Y), Error);
  try {
    fit_exp_tilting(X, Y);
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::Separation);
  }
}

TEST_CASE("rank-deficient designs are rejected") {
  Rng rng(74, 0);
  Matrix X(20, 2), Y(20, 2);
  for (Eigen::Index i = 0; i < 20; ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = 2.0 * X(i, 0);  // collinear
    Y(i, 0) = rng.normal();
    Y(i, 1) = 2.0 * Y(i, 0);
  }
  REQUIRE_THROWS_AS(fit_exp_tilting(X, Y), Error);
}

TEST_CASE("one-dimensional MH picks the discriminating sign") {
  Rng rng(75, 0);
  Matrix X(50, 1), Y(50, 1);
  for (Eigen::Index i = 0; i < 50; ++i) {
    X(i, 0) = -2.0 + rng.normal();  // diseased scores are LOWER
    Y(i, 0) = rng.normal();
  }
  const BaselineResult fit = fit_mh_auc(X, Y);
  REQUIRE(fit.beta_unit[0] == -1.0);
}

TEST_CASE("MH finds an axis under perfect separation") {
  Rng rng(76, 0);
  const int n = 60;
  Matrix X(n, 2), Y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = 2.0 + rng.uniform();  // disjoint supports along x1
    X(i, 1) = rng.normal();
    Y(i, 0) = rng.uniform();
    Y(i, 1) = rng.normal();
  }
  const BaselineResult fit = fit_mh_auc(X, Y);
  Vector axis(2);
  axis << 1.0, 0.0;
  REQUIRE((fit.beta_unit - axis).norm() < 0.05);
  REQUIRE(fit.beta_unit.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("smoothed AUC objective ignores a common shift") {
  Rng rng(77, 0);
  Matrix X(30, 2), Y(35, 2);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    X(i, 0) = 0.5 + rng.normal();
    X(i, 1) = rng.normal();
  }
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    Y(i, 0) = rng.normal();
    Y(i, 1) = rng.normal();
  }
  Vector beta(2);
  beta << 0.8, -0.6;
  const double base = smoothed_auc_objective(X, Y, beta, 0.3);
  Matrix Xs = X, Ys = Y;
  Xs.array() += 7.0;
  Ys.array() += 7.0;
  REQUIRE(smoothed_auc_objective(Xs, Ys, beta, 0.3) ==
          Catch::Approx(base).margin(1e-9));
}

TEST_CASE("MH multi-start never falls below its warm start") {
  Rng rng(78, 0);
  auto [X, Y] = generate_ex1(0.9, 120, 120, rng);
  const BaselineResult tilt = fit_exp_tilting(X, Y);
  const BaselineResult mh = fit_mh_auc(X, Y);

  Vector pooled(X.rows() + Y.rows());
  pooled.head(X.rows()) = X * tilt.beta_unit;
  pooled.tail(Y.rows()) = Y * tilt.beta_unit;
  const double mean = pooled.mean();
  const double sd = std::sqrt((pooled.array() - mean).square().sum() /
                              static_cast<double>(pooled.size() - 1));
  const double h = sd / std::sqrt(static_cast<double>(pooled.size()));
  REQUIRE(mh.diagnostics.objective >=
          smoothed_auc_objective(X, Y, tilt.beta_unit, h) - 1e-12);
}
