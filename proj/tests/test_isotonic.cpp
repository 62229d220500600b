#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "helpers.hpp"
#include "msl/isotonic.hpp"

using namespace msl;

namespace {

IsotonicProblem random_problem(Rng& rng, int max_len = 10, bool inject_ties = true) {
  const int L = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_len)));
  IsotonicProblem p;
  for (int i = 0; i < L; ++i) {
    p.positions.push_back(std::floor(rng.uniform() * 8.0));  // coarse grid forces ties
    p.responses.push_back(rng.uniform());
    p.weights.push_back(0.1 + 4.9 * rng.uniform());
  }
  if (!inject_ties) {
    for (int i = 0; i < L; ++i) p.positions[static_cast<std::size_t>(i)] += i * 1e-3;
  }
  return p;
}

}  // namespace

TEST_CASE("already monotone responses are interpolated exactly") {
  IsotonicProblem p{{1.0, 2.0, 3.0}, {0.1, 0.4, 0.8}, {1.0, 2.0, 0.5}};
  const IsotonicFit fit = isotonic_regression(p);
  REQUIRE(fit.fitted == std::vector<double>{0.1, 0.4, 0.8});
  const StepFunction theta = fit.step();
  REQUIRE(theta(1.0) == 0.1);
  REQUIRE(theta(2.5) == 0.4);
}

TEST_CASE("one violating pair pools to the weighted mean") {
  IsotonicProblem p{{1.0, 2.0}, {1.0, 0.0}, {1.0, 1.0}};
  const IsotonicFit fit = isotonic_regression(p);
  REQUIRE(fit.fitted == std::vector<double>{0.5, 0.5});
  REQUIRE(fit.knots == std::vector<double>{1.0});
}

TEST_CASE("worked three-point instance") {
  IsotonicProblem p{{1.0, 2.0, 3.0}, {0.3, 0.1, 0.2}, {1.0, 2.0, 1.0}};
  const IsotonicFit fit = isotonic_regression(p);
  // first two pool: (0.3 + 0.2) / 3
  REQUIRE(fit.fitted[0] == Catch::Approx(0.5 / 3.0).epsilon(1e-15));
  REQUIRE(fit.fitted[1] == Catch::Approx(0.5 / 3.0).epsilon(1e-15));
  REQUIRE(fit.fitted[2] == Catch::Approx(0.2).epsilon(1e-15));
  // matches the independent oracle
  const auto oracle = testing::isotonic_oracle(p.positions, p.responses, p.weights);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(fit.fitted[i] == Catch::Approx(oracle[i]).margin(1e-12));
  }
}

TEST_CASE("solver matches the max-min oracle on random small instances") {
  Rng rng(31, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const IsotonicProblem p = random_problem(rng, 10, trial % 5 != 0);
    const IsotonicFit fit = isotonic_regression(p);
    const auto oracle = testing::isotonic_oracle(p.positions, p.responses, p.weights);
    for (std::size_t i = 0; i < p.size(); ++i) {
      REQUIRE(fit.fitted[i] == Catch::Approx(oracle[i]).margin(1e-10));
    }
  }
}

TEST_CASE("idempotence: refitting the fitted values changes nothing") {
  Rng rng(32, 0);
  for (int trial = 0; trial < 50; ++trial) {
    IsotonicProblem p = random_problem(rng, 20);
    const IsotonicFit first = isotonic_regression(p);
    IsotonicProblem again = p;
    again.responses = first.fitted;
    const IsotonicFit second = isotonic_regression(again);
    REQUIRE(second.fitted == first.fitted);
  }
}

TEST_CASE("adding a constant shifts the fit by exactly that constant") {
  Rng rng(33, 0);
  for (int trial = 0; trial < 50; ++trial) {
    IsotonicProblem p = random_problem(rng, 12);
    for (double& r : p.responses) r *= 0.5;  // keep room inside [0, 1]
    const double c = 0.25;
    IsotonicProblem shifted = p;
    for (double& r : shifted.responses) r += c;
    const IsotonicFit base = isotonic_regression(p);
    const IsotonicFit moved = isotonic_regression(shifted);
    for (std::size_t i = 0; i < p.size(); ++i) {
      REQUIRE(moved.fitted[i] == Catch::Approx(base.fitted[i] + c).margin(1e-12));
    }
  }
}

TEST_CASE("weighted mean is preserved") {
  Rng rng(34, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const IsotonicProblem p = random_problem(rng, 40);
    const IsotonicFit fit = isotonic_regression(p);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      lhs += p.weights[i] * fit.fitted[i];
      rhs += p.weights[i] * p.responses[i];
    }
    REQUIRE(lhs == Catch::Approx(rhs).margin(1e-12));
  }
}

TEST_CASE("empty problem is rejected") {
  IsotonicProblem p;
  REQUIRE_THROWS_AS(solve_pava(p), Error);
  try {
    solve_pava(p);
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::EmptyProblem);
  }
}

TEST_CASE("ties at equal positions collapse to one fitted value") {
  IsotonicProblem p{{2.0, 2.0, 1.0}, {0.9, 0.1, 0.2}, {1.0, 3.0, 1.0}};
  const IsotonicFit fit = isotonic_regression(p);
  REQUIRE(fit.fitted[0] == fit.fitted[1]);
  // merged response (0.9 + 0.3) / 4 = 0.3 is above 0.2: no pooling
  REQUIRE(fit.fitted[0] == Catch::Approx(0.3).epsilon(1e-15));
  REQUIRE(fit.fitted[2] == Catch::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("runtime stays near-linear after the sort") {
  auto time_solve = [](int L) {
    Rng rng(35, static_cast<std::uint64_t>(L));
    IsotonicProblem p;
    p.positions.resize(static_cast<std::size_t>(L));
    p.responses.resize(static_cast<std::size_t>(L));
    p.weights.resize(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
      p.positions[static_cast<std::size_t>(i)] = rng.uniform();
      p.responses[static_cast<std::size_t>(i)] = rng.uniform();
      p.weights[static_cast<std::size_t>(i)] = 0.5 + rng.uniform();
    }
    std::vector<double> times;
    for (int rep = 0; rep < 7; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const IsotonicFit fit = isotonic_regression(p);
      const auto t1 = std::chrono::steady_clock::now();
      REQUIRE(fit.fitted.size() == static_cast<std::size_t>(L));
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    return testing::median_of(times);
  };
  const double t1 = time_solve(100000);
  const double t2 = time_solve(200000);
  REQUIRE(t2 / t1 < 2.875);  // ~2.3x expected with slack for timer noise
}

TEST_CASE("theta_beta on a constant-ratio cloud is the constant function") {
  Rng rng(36, 0);
  Matrix X(20, 2);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    X(i, 0) = rng.normal();
    X(i, 1) = rng.normal();
  }
  Kernel k(KernelFamily::Epanechnikov);
  Bandwidth h = normal_reference_bandwidth(X, k);
  KernelModel f(X, h, k), g(X, h, k);
  Rng cloud_rng(37, 0);
  const MonteCarloCloud cloud = build_cloud(f, g, 0.5, 100, cloud_rng);
  Vector beta(2);
  beta << 1.0, -0.3;
  const StepFunction theta = theta_beta(cloud, beta);
  for (double t : {-2.0, 0.0, 1.5}) REQUIRE(theta(t) == 0.5);
}

TEST_CASE("theta_beta preserves the weighted mean of the ratios") {
  Rng data_rng(38, 0);
  Matrix X(30, 2), Y(40, 2);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    X(i, 0) = data_rng.normal();
    X(i, 1) = 1.0 + data_rng.normal();
  }
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    Y(i, 0) = 0.5 + data_rng.normal();
    Y(i, 1) = data_rng.normal();
  }
  Kernel k(KernelFamily::Epanechnikov);
  KernelModel f(X, normal_reference_bandwidth(X, k), k);
  KernelModel g(Y, normal_reference_bandwidth(Y, k), k);
  Rng cloud_rng(39, 0);
  const MonteCarloCloud cloud = build_cloud(f, g, 3.0 / 7.0, 400, cloud_rng);

  Vector beta(2);
  beta << 1.0, 2.0;
  const StepFunction theta = theta_beta(cloud, beta);
  const Vector s = cloud.scores(beta);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < cloud.size(); ++i) {
    const auto k_i = static_cast<std::size_t>(i);
    lhs += cloud.weights()[k_i] * theta(s[i]);
    rhs += cloud.weights()[k_i] * cloud.ratios()[k_i];
    REQUIRE(theta(s[i]) > 0.0);
    REQUIRE(theta(s[i]) < 1.0);
  }
  REQUIRE(lhs == Catch::Approx(rhs).margin(1e-12));
}
