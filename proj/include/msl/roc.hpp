#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "msl/common.hpp"
#include "msl/estimator.hpp"

namespace msl {

//! Combined-score CDFs of the diseased (Fc) and healthy (Gc) populations,
//! tabulated at the sorted score values. Both columns are cumulative masses
//! renormalized so the final entry is exactly 1; evaluation between
//! thresholds is by linear interpolation (the scores discretize continuous
//! distributions).
struct ScoreCdf {
  std::vector<double> thresholds;
  std::vector<double> fc;
  std::vector<double> gc;
};

struct RocCurve {
  std::vector<double> s;
  std::vector<double> roc;
  double auc = 0.0;
};

//! Shared construction: point masses at scores, ties merged, cumsum and
//! renormalization.
inline ScoreCdf make_score_cdf(const std::vector<double>& scores,
                               const std::vector<double>& fmass,
                               const std::vector<double>& gmass) {
  const std::size_t k = scores.size();
  require(k > 0 && fmass.size() == k && gmass.size() == k,
          ErrorCode::InvalidArgument, "score/mass length mismatch");

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  ScoreCdf cdf;
  cdf.thresholds.reserve(k);
  cdf.fc.reserve(k);
  cdf.gc.reserve(k);
  double cum_f = 0.0, cum_g = 0.0;
  std::size_t i = 0;
  while (i < k) {
    const double u = scores[order[i]];
    while (i < k && scores[order[i]] == u) {
      cum_f += fmass[order[i]];
      cum_g += gmass[order[i]];
      ++i;
    }
    cdf.thresholds.push_back(u);
    cdf.fc.push_back(cum_f);
    cdf.gc.push_back(cum_g);
  }

  require(cum_f >= 1e-12, ErrorCode::ZeroMass, "total diseased score mass is zero");
  require(cum_g >= 1e-12, ErrorCode::ZeroMass, "total healthy score mass is zero");
  for (double& v : cdf.fc) v /= cum_f;
  for (double& v : cdf.gc) v /= cum_g;
  return cdf;
}

//! Model-based score CDFs over the fit's Monte Carlo cloud:
//! Fc gets mass w_i * theta(u_i), Gc gets w_i * (1 - theta(u_i)) at each
//! score u_i = beta^T Z_i.
inline ScoreCdf score_cdfs(const FitResult& fit) {
  const Vector s = fit.cloud.scores(fit.beta_hat);
  const std::size_t k = static_cast<std::size_t>(s.size());
  std::vector<double> scores(k), fmass(k), gmass(k);
  const std::vector<double>& w = fit.cloud.weights();
  for (std::size_t i = 0; i < k; ++i) {
    scores[i] = s[static_cast<Eigen::Index>(i)];
    const double theta = fit.theta_hat(scores[i]);
    fmass[i] = w[i] * theta;
    gmass[i] = w[i] * (1.0 - theta);
  }
  return make_score_cdf(scores, fmass, gmass);
}

//! Empirical score CDFs for a scored two-sample dataset (equal weights within
//! each group). Used wherever a method provides only a direction.
inline ScoreCdf empirical_score_cdf(const Vector& diseased_scores,
                                    const Vector& healthy_scores) {
  const std::size_t n = static_cast<std::size_t>(diseased_scores.size());
  const std::size_t m = static_cast<std::size_t>(healthy_scores.size());
  require(n > 0 && m > 0, ErrorCode::InvalidArgument, "empty score vectors");
  std::vector<double> scores(n + m), fmass(n + m, 0.0), gmass(n + m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = diseased_scores[static_cast<Eigen::Index>(i)];
    fmass[i] = 1.0 / static_cast<double>(n);
  }
  for (std::size_t j = 0; j < m; ++j) {
    scores[n + j] = healthy_scores[static_cast<Eigen::Index>(j)];
    gmass[n + j] = 1.0 / static_cast<double>(m);
  }
  return make_score_cdf(scores, fmass, gmass);
}

namespace detail {

// 1 - Fc at the generalized inverse inf{u : Gc(u) >= q}, with both CDFs
// linearly interpolated between thresholds and anchored at mass zero.
inline double roc_at(const ScoreCdf& cdf, double q) {
  if (q <= 0.0) return 1.0;
  if (q >= 1.0) {
    const auto it = std::lower_bound(cdf.gc.begin(), cdf.gc.end(), 1.0);
    return 1.0 - cdf.fc[static_cast<std::size_t>(it - cdf.gc.begin())];
  }
  const auto it = std::lower_bound(cdf.gc.begin(), cdf.gc.end(), q);
  const std::size_t j = static_cast<std::size_t>(it - cdf.gc.begin());
  const double g_hi = cdf.gc[j], f_hi = cdf.fc[j];
  const double g_lo = j > 0 ? cdf.gc[j - 1] : 0.0;
  const double f_lo = j > 0 ? cdf.fc[j - 1] : 0.0;
  if (g_hi == g_lo) return 1.0 - f_lo;  // flat segment: leftmost attaining point
  const double t = (q - g_lo) / (g_hi - g_lo);
  return 1.0 - (f_lo + t * (f_hi - f_lo));
}

}  // namespace detail

//! ROC_C(s) = 1 - Fc(Gc^{-1}(1 - s)) on an equispaced s-grid, endpoints
//! pinned to (0,0) and (1,1). Nondecreasing and concave whenever the f/g
//! mass ratio is monotone in the score, which the isotonic theta guarantees.
inline RocCurve roc_curve(const ScoreCdf& cdf, int grid_size) {
  require(grid_size >= 2, ErrorCode::InvalidArgument, "grid_size must be >= 2");
  RocCurve curve;
  curve.s.resize(static_cast<std::size_t>(grid_size));
  curve.roc.resize(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double s = static_cast<double>(i) / (grid_size - 1);
    curve.s[static_cast<std::size_t>(i)] = s;
    curve.roc[static_cast<std::size_t>(i)] = detail::roc_at(cdf, 1.0 - s);
  }
  curve.roc.front() = 0.0;
  curve.roc.back() = 1.0;

  double area = 0.0;
  for (int i = 1; i < grid_size; ++i) {
    area += 0.5 *
            (curve.roc[static_cast<std::size_t>(i)] +
             curve.roc[static_cast<std::size_t>(i - 1)]) *
            (curve.s[static_cast<std::size_t>(i)] - curve.s[static_cast<std::size_t>(i - 1)]);
  }
  curve.auc = area;
  return curve;
}

//! Trapezoidal area under an already-sampled curve.
inline double auc(const RocCurve& curve) {
  require(curve.s.size() == curve.roc.size() && curve.s.size() >= 2,
          ErrorCode::InvalidArgument, "curve must hold at least two samples");
  double area = 0.0;
  for (std::size_t i = 1; i < curve.s.size(); ++i) {
    area += 0.5 * (curve.roc[i] + curve.roc[i - 1]) * (curve.s[i] - curve.s[i - 1]);
  }
  return area;
}

//! L2 distance between two curves sampled on the same s-grid.
inline double roc_l2_distance(const RocCurve& a, const RocCurve& b) {
  require(a.s.size() == b.s.size() && a.s.size() >= 2, ErrorCode::InvalidArgument,
          "curves must share a grid");
  double acc = 0.0;
  for (std::size_t i = 1; i < a.s.size(); ++i) {
    const double d1 = a.roc[i] - b.roc[i];
    const double d0 = a.roc[i - 1] - b.roc[i - 1];
    acc += 0.5 * (d1 * d1 + d0 * d0) * (a.s[i] - a.s[i - 1]);
  }
  return std::sqrt(acc);
}

}  // namespace msl
