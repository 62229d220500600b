#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "msl/common.hpp"
#include "msl/nelder_mead.hpp"
#include "msl/rng.hpp"

namespace msl {

enum class BaselineMethod { ExpTilting, MH };

struct BaselineDiagnostics {
  int iterations = 0;
  int evaluations = 0;
  double objective = 0.0;
  bool converged = false;
  bool unstable_normalization = false;  // slope was near zero before scaling
};

struct BaselineResult {
  BaselineMethod method = BaselineMethod::ExpTilting;
  Vector beta_unit;     // l2-normalized direction
  double intercept = 0.0;  // exp-tilting only: alpha of the density-ratio model
  BaselineDiagnostics diagnostics;
};

namespace detail {

inline double expit(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

// Unit vector from spherical angles (d-1 of them).
inline Vector direction_from_angles(const std::vector<double>& phi) {
  const int d = static_cast<int>(phi.size()) + 1;
  Vector beta(d);
  double sines = 1.0;
  for (int k = 0; k < d - 1; ++k) {
    beta[k] = sines * std::cos(phi[static_cast<std::size_t>(k)]);
    sines *= std::sin(phi[static_cast<std::size_t>(k)]);
  }
  beta[d - 1] = sines;
  return beta;
}

inline std::vector<double> angles_from_direction(const Vector& beta) {
  const int d = static_cast<int>(beta.size());
  std::vector<double> phi(static_cast<std::size_t>(d - 1));
  double tail = beta.squaredNorm();
  for (int k = 0; k < d - 1; ++k) {
    tail -= beta[k] * beta[k];
    phi[static_cast<std::size_t>(k)] =
        std::atan2(std::sqrt(std::max(tail, 0.0)), beta[k]);
  }
  if (d >= 2 && beta[d - 1] < 0.0) {
    phi[static_cast<std::size_t>(d - 2)] = -phi[static_cast<std::size_t>(d - 2)];
  }
  return phi;
}

}  // namespace detail

//! Exponential-tilting fit via the pooled logistic-regression equivalence:
//! Newton-Raphson on the logistic log-likelihood with the disease indicator
//! as outcome. The reported intercept is corrected by log(n/m) so it matches
//! the density-ratio parameterization.
inline BaselineResult fit_exp_tilting(const Matrix& X, const Matrix& Y) {
  const auto n = X.rows(), m = Y.rows();
  const int d = static_cast<int>(X.cols());
  require(n >= 2 && m >= 2, ErrorCode::InvalidArgument, "need n, m >= 2");
  require(Y.cols() == d, ErrorCode::InvalidArgument, "X/Y dimension mismatch");
  require(X.allFinite() && Y.allFinite(), ErrorCode::InvalidArgument,
          "non-finite data");

  Matrix design(n + m, d + 1);
  design.col(0).setOnes();
  design.block(0, 1, n, d) = X;
  design.block(n, 1, m, d) = Y;
  Vector y = Vector::Zero(n + m);
  y.head(n).setOnes();

  {
    Eigen::ColPivHouseholderQR<Matrix> qr(design);
    if (qr.rank() < d + 1) {
      fail(ErrorCode::RankDeficient, "pooled design matrix is rank deficient");
    }
  }

  Vector coef = Vector::Zero(d + 1);
  BaselineResult result;
  result.method = BaselineMethod::ExpTilting;
  const double tol = 1e-10;
  const int max_iter = 100;
  for (int it = 0; it < max_iter; ++it) {
    Vector eta = design * coef;
    Vector mu(n + m), w(n + m);
    for (Eigen::Index i = 0; i < n + m; ++i) {
      mu[i] = detail::expit(eta[i]);
      w[i] = std::max(mu[i] * (1.0 - mu[i]), 1e-12);
    }
    Vector grad = design.transpose() * (y - mu);
    Matrix hess = design.transpose() * w.asDiagonal() * design;
    Vector delta = hess.ldlt().solve(grad);
    require(delta.allFinite(), ErrorCode::RankDeficient,
            "Newton step failed (singular information matrix)");
    coef += delta;
    if (coef.tail(d).norm() > 1e3) {
      fail(ErrorCode::Separation,
           "logistic slope diverged; groups may be linearly separable");
    }
    result.diagnostics.iterations = it + 1;
    if (delta.cwiseAbs().maxCoeff() < tol) {
      result.diagnostics.converged = true;
      break;
    }
  }
  require(result.diagnostics.converged, ErrorCode::OptimizerFailure,
          "logistic regression did not converge");

  Vector slope = coef.tail(d);
  const double norm = slope.norm();
  result.diagnostics.unstable_normalization = norm < 1e-8;
  result.beta_unit = norm > 0.0 ? Vector(slope / norm) : Vector(Vector::Unit(d, 0));
  result.intercept = coef[0] - std::log(static_cast<double>(n) / static_cast<double>(m));
  return result;
}

//! Smoothed empirical AUC objective: mean over all (diseased, healthy) pairs
//! of expit((beta^T X_i - beta^T Y_j) / h).
inline double smoothed_auc_objective(const Matrix& X, const Matrix& Y,
                                     const Vector& beta, double h) {
  const Vector sx = X * beta;
  const Vector sy = Y * beta;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sx.size(); ++i) {
    for (Eigen::Index j = 0; j < sy.size(); ++j) {
      acc += detail::expit((sx[i] - sy[j]) / h);
    }
  }
  return acc / (static_cast<double>(sx.size()) * static_cast<double>(sy.size()));
}

//! AUC-maximization fit: maximize the sigmoid-smoothed empirical AUC over
//! unit-norm directions (spherical parameterization, Nelder-Mead with one
//! start at the exponential-tilting direction plus jittered restarts).
//! Passing smoothing <= 0 selects the default rule
//! h = pooled-SD(exp-tilting scores) / sqrt(n + m).
inline BaselineResult fit_mh_auc(const Matrix& X, const Matrix& Y,
                                 double smoothing = 0.0) {
  const auto n = X.rows(), m = Y.rows();
  const int d = static_cast<int>(X.cols());
  require(n >= 2 && m >= 2, ErrorCode::InvalidArgument, "need n, m >= 2");
  require(Y.cols() == d, ErrorCode::InvalidArgument, "X/Y dimension mismatch");

  // warm start from the parametric baseline; when that fit fails (separated
  // or collinear data) fall back to the standardized mean difference
  Vector warm;
  try {
    warm = fit_exp_tilting(X, Y).beta_unit;
  } catch (const Error&) {
    warm = (X.colwise().mean() - Y.colwise().mean()).transpose();
    const double norm = warm.norm();
    warm = norm > 0.0 ? Vector(warm / norm) : Vector(Vector::Unit(d, 0));
  }

  double h = smoothing;
  if (!(h > 0.0)) {
    Vector pooled(n + m);
    pooled.head(n) = X * warm;
    pooled.tail(m) = Y * warm;
    const double mean = pooled.mean();
    const double sd = std::sqrt((pooled.array() - mean).square().sum() /
                                static_cast<double>(n + m - 1));
    h = sd / std::sqrt(static_cast<double>(n + m));
    if (!(h > 0.0)) h = 1e-3;
  }

  BaselineResult result;
  result.method = BaselineMethod::MH;

  if (d == 1) {
    // only the sign is free: pick it from the empirical AUC
    double above = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (X(i, 0) > Y(j, 0)) above += 1.0;
        else if (X(i, 0) == Y(j, 0)) above += 0.5;
      }
    }
    const double emp_auc = above / (static_cast<double>(n) * static_cast<double>(m));
    result.beta_unit = Vector::Constant(1, emp_auc >= 0.5 ? 1.0 : -1.0);
    result.diagnostics.objective =
        smoothed_auc_objective(X, Y, result.beta_unit, h);
    result.diagnostics.converged = true;
    return result;
  }

  auto negative_objective = [&](const std::vector<double>& phi) {
    return -smoothed_auc_objective(X, Y, detail::direction_from_angles(phi), h);
  };

  NelderMeadOptions opt;
  opt.tol = 1e-8;
  opt.max_iter = 500 * (d - 1);
  opt.init_step = 0.25;

  Rng rng(0x4d48u, 0);  // jitter stream for restarts; fixed, so fits are reproducible
  const std::vector<double> phi0 = detail::angles_from_direction(warm);
  NelderMeadResult best;
  const int starts = 5;
  for (int s = 0; s < starts; ++s) {
    std::vector<double> phi = phi0;
    if (s > 0) {
      for (double& p : phi) p += 0.5 * rng.normal();
    }
    NelderMeadResult run = nelder_mead_minimize(negative_objective, phi, opt);
    result.diagnostics.evaluations += run.evaluations;
    result.diagnostics.iterations += run.iterations;
    if (run.fmin < best.fmin) best = run;
  }
  require(std::isfinite(best.fmin), ErrorCode::OptimizerFailure,
          "smoothed-AUC optimization failed at every start");

  Vector beta = detail::direction_from_angles(best.x);
  beta /= beta.norm();
  // report with a consistent orientation relative to the parametric baseline
  if (beta.dot(warm) < 0.0) beta = -beta;
  result.beta_unit = beta;
  result.diagnostics.objective = smoothed_auc_objective(X, Y, beta, h);
  result.diagnostics.converged = true;
  return result;
}

}  // namespace msl
