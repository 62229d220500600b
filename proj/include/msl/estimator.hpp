#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "msl/bandwidth.hpp"
#include "msl/baselines.hpp"
#include "msl/common.hpp"
#include "msl/isotonic.hpp"
#include "msl/kde.hpp"
#include "msl/nelder_mead.hpp"
#include "msl/rng.hpp"
#include "msl/sampling.hpp"
#include "msl/step_function.hpp"

namespace msl {

struct FitConfig {
  KernelFamily kernel = KernelFamily::Epanechnikov;
  double bandwidth_multiplier = 1.0;
  std::vector<double> bandwidth_f;  // explicit per-coordinate bandwidths; empty = normal reference
  std::vector<double> bandwidth_g;
  int n_monte_carlo = 10000;
  double nm_tol = 1e-6;
  int nm_max_iter_factor = 500;  // iteration cap = factor * max(1, d - 1)
  int multistarts = 5;
  double b_max = 50.0;  // box constraint on the free components of beta
  int roc_grid_size = 1001;
  RngSeed seed;
};

struct FitDiagnostics {
  int starts = 0;
  int nm_iterations = 0;
  int objective_evaluations = 0;
  bool converged = false;
};

//! Full state of one maximum smoothed likelihood fit. The kernel models and
//! the Monte Carlo cloud are retained so densities, score CDFs and ROC curves
//! can be evaluated afterwards without re-sampling.
struct FitResult {
  Vector beta_hat;   // raw parameterization, first component fixed to +1 or -1
  Vector beta_unit;  // beta_hat / ||beta_hat||_2
  StepFunction theta_hat;
  double profile_ll = 0.0;
  double lambda = 0.0;
  KernelModel fmodel;
  KernelModel gmodel;
  MonteCarloCloud cloud;
  FitDiagnostics diagnostics;
};

// log-clamp bound; applied only inside likelihood evaluation, never to the
// stored step function
inline constexpr double kThetaClampEps = 1e-6;

namespace detail {

inline double clamp_unit(double v, double eps) {
  return v < eps ? eps : (v > 1.0 - eps ? 1.0 - eps : v);
}

}  // namespace detail

//! Monte Carlo profile log-likelihood of a direction: fits theta by isotonic
//! regression on the cloud and evaluates the two-block log sum. Deterministic
//! given the cloud, and invariant to positive rescaling of beta (the PAVA
//! problem depends on beta only through the ordering of the scores).
inline double profile_objective(const MonteCarloCloud& cloud, const Vector& beta) {
  require(beta.allFinite() && beta.norm() > 0.0, ErrorCode::InvalidArgument,
          "beta must be finite and nonzero");
  const Vector s = cloud.scores(beta);
  IsotonicProblem problem;
  problem.positions.assign(s.data(), s.data() + s.size());
  problem.responses = cloud.ratios();
  problem.weights = cloud.weights();
  const IsotonicFit iso = isotonic_regression(problem);

  const int N = cloud.half_size();
  const double lambda = cloud.lambda();
  double diseased = 0.0, healthy = 0.0;
  for (int i = 0; i < N; ++i) {
    diseased += std::log(detail::clamp_unit(iso.fitted[static_cast<std::size_t>(i)],
                                            kThetaClampEps));
  }
  for (int i = N; i < 2 * N; ++i) {
    healthy += std::log(1.0 - detail::clamp_unit(
                                  iso.fitted[static_cast<std::size_t>(i)],
                                  kThetaClampEps));
  }
  return (lambda * diseased + (1.0 - lambda) * healthy) / static_cast<double>(N);
}

namespace detail {

inline Bandwidth resolve_bandwidth(const Matrix& data, const Kernel& kernel,
                                   const std::vector<double>& explicit_h,
                                   double multiplier) {
  if (!explicit_h.empty()) {
    require(static_cast<int>(explicit_h.size()) == data.cols(),
            ErrorCode::InvalidArgument, "explicit bandwidth dimension mismatch");
    return Bandwidth(explicit_h).scaled(multiplier);
  }
  return normal_reference_bandwidth(data, kernel).scaled(multiplier);
}

// Free components of the warm start for a fixed leading sign: scale the
// baseline direction so its first component equals the sign.
inline std::vector<double> warm_start_free(const Vector& direction, double sign, int d) {
  std::vector<double> free(static_cast<std::size_t>(d - 1), 0.0);
  if (std::abs(direction[0]) > 1e-10) {
    const double scale = sign / direction[0];
    for (int j = 1; j < d; ++j) {
      free[static_cast<std::size_t>(j - 1)] = scale * direction[j];
    }
  }
  return free;
}

}  // namespace detail

//! Profile maximum smoothed likelihood fit.
//!
//! Pipeline: normal-reference bandwidths -> kernel models -> one Monte Carlo
//! cloud, fixed for the whole fit (common random numbers keep the profile
//! objective deterministic) -> Nelder-Mead over the free components for each
//! leading sign, multi-start with one start at the exponential-tilting
//! direction -> best run wins.
inline FitResult fit(const Matrix& X, const Matrix& Y, const FitConfig& config) {
  const auto n = X.rows(), m = Y.rows();
  const int d = static_cast<int>(X.cols());
  require(n >= 2 && m >= 2 && d >= 1, ErrorCode::InvalidArgument,
          "need n, m >= 2 and d >= 1");
  require(Y.cols() == d, ErrorCode::InvalidArgument, "X/Y dimension mismatch");

  const Kernel kernel(config.kernel);
  KernelModel fmodel(X, detail::resolve_bandwidth(X, kernel, config.bandwidth_f,
                                                  config.bandwidth_multiplier),
                     kernel);
  KernelModel gmodel(Y, detail::resolve_bandwidth(Y, kernel, config.bandwidth_g,
                                                  config.bandwidth_multiplier),
                     kernel);
  const double lambda =
      static_cast<double>(n) / static_cast<double>(n + m);

  Rng rng(config.seed);
  MonteCarloCloud cloud = build_cloud(fmodel, gmodel, lambda, config.n_monte_carlo, rng);

  // warm start from the parametric baseline; fall back to the axis direction
  Vector warm_direction = Vector::Unit(d, 0);
  try {
    warm_direction = fit_exp_tilting(X, Y).beta_unit;
  } catch (const Error&) {
  }

  FitDiagnostics diag;
  double best_value = -std::numeric_limits<double>::infinity();
  Vector best_beta;

  auto consider = [&](const Vector& beta, double value) {
    if (std::isfinite(value) && value > best_value) {
      best_value = value;
      best_beta = beta;
    }
  };

  for (const double sign : {1.0, -1.0}) {
    if (d == 1) {
      const Vector beta = Vector::Constant(1, sign);
      ++diag.starts;
      ++diag.objective_evaluations;
      consider(beta, profile_objective(cloud, beta));
      continue;
    }

    auto assemble = [&](const std::vector<double>& free) {
      Vector beta(d);
      beta[0] = sign;
      for (int j = 1; j < d; ++j) beta[j] = free[static_cast<std::size_t>(j - 1)];
      return beta;
    };
    auto negative_profile = [&](const std::vector<double>& free) {
      for (double v : free) {
        if (!(std::abs(v) <= config.b_max)) {
          return 1e12;  // box penalty, keeps the simplex inside B
        }
      }
      return -profile_objective(cloud, assemble(free));
    };

    NelderMeadOptions opt;
    opt.tol = config.nm_tol;
    opt.max_iter = config.nm_max_iter_factor * std::max(1, d - 1);

    const std::vector<double> start0 = detail::warm_start_free(warm_direction, sign, d);
    double jitter_scale = 0.5;
    for (double v : start0) jitter_scale = std::max(jitter_scale, 0.5 * std::abs(v));

    for (int s = 0; s < std::max(1, config.multistarts); ++s) {
      std::vector<double> start = start0;
      if (s > 0) {
        for (double& v : start) v += jitter_scale * rng.normal();
      }
      NelderMeadResult run = nelder_mead_minimize(negative_profile, start, opt);
      ++diag.starts;
      diag.nm_iterations += run.iterations;
      diag.objective_evaluations += run.evaluations;
      if (std::isfinite(run.fmin)) {
        consider(assemble(run.x), -run.fmin);
      }
    }
  }

  require(best_beta.size() == d, ErrorCode::OptimizerFailure,
          "no optimizer start produced a finite profile likelihood");
  diag.converged = true;

  FitResult result{
      best_beta,
      best_beta / best_beta.norm(),
      theta_beta(cloud, best_beta),
      best_value,
      lambda,
      std::move(fmodel),
      std::move(gmodel),
      std::move(cloud),
      diag,
  };
  return result;
}

//! Density reconstruction f^(x) = theta(beta^T x) psi(x) / lambda and
//! g^(x) = (1 - theta(beta^T x)) psi(x) / (1 - lambda).
inline std::pair<double, double> density_at(const FitResult& fit, const Vector& x) {
  const double psi = psi_eval(fit.fmodel, fit.gmodel, fit.lambda, x);
  const double theta = fit.theta_hat(fit.beta_hat.dot(x));
  return {theta * psi / fit.lambda, (1.0 - theta) * psi / (1.0 - fit.lambda)};
}

}  // namespace msl
