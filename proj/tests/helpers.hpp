#pragma once

// Test-only oracles and small statistics helpers. These deliberately take
// different algorithmic routes than the library so they can serve as
// independent cross-checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "msl/common.hpp"
#include "msl/isotonic.hpp"

namespace msl::testing {

inline double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Simpson rule on [a, b] with an odd number of nodes.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int points) {
  const int m = points - 1;
  const double h = (b - a) / m;
  double sum = f(a) + f(b);
  for (int i = 1; i < m; ++i) sum += ((i % 2 == 0) ? 2.0 : 4.0) * f(a + h * i);
  return sum * h / 3.0;
}

// Isotonic-regression oracle by the max-min (lower sets) representation:
// after merging ties, fitted_i = max_{a<=i} min_{b>=i} weighted-mean(r[a..b]).
// O(L^3), intended for small instances only.
inline std::vector<double> isotonic_oracle(const std::vector<double>& positions,
                                           const std::vector<double>& responses,
                                           const std::vector<double>& weights) {
  const std::size_t L = positions.size();
  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });

  // merge exact position ties
  std::vector<double> pos, resp, wt;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t k = 0; k < L;) {
    const double p = positions[order[k]];
    double swr = 0.0, sw = 0.0;
    members.emplace_back();
    while (k < L && positions[order[k]] == p) {
      swr += weights[order[k]] * responses[order[k]];
      sw += weights[order[k]];
      members.back().push_back(order[k]);
      ++k;
    }
    pos.push_back(p);
    resp.push_back(swr / sw);
    wt.push_back(sw);
  }

  const std::size_t G = pos.size();
  std::vector<double> merged_fit(G);
  for (std::size_t i = 0; i < G; ++i) {
    double best_lower = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a <= i; ++a) {
      double worst_upper = std::numeric_limits<double>::infinity();
      for (std::size_t b = i; b < G; ++b) {
        double swr = 0.0, sw = 0.0;
        for (std::size_t t = a; t <= b; ++t) {
          swr += wt[t] * resp[t];
          sw += wt[t];
        }
        worst_upper = std::min(worst_upper, swr / sw);
      }
      best_lower = std::max(best_lower, worst_upper);
    }
    merged_fit[i] = best_lower;
  }

  std::vector<double> fitted(L);
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t idx : members[g]) fitted[idx] = merged_fit[g];
  }
  return fitted;
}

// Logistic-regression oracle via iteratively reweighted least squares on the
// working response, solved with a QR factorization each sweep.
inline Vector irls_logistic(const Matrix& design, const Vector& y, int max_iter = 200,
                            double tol = 1e-12) {
  Vector coef = Vector::Zero(design.cols());
  for (int it = 0; it < max_iter; ++it) {
    Vector eta = design * coef;
    Vector mu(eta.size()), w(eta.size()), z(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      const double p = 1.0 / (1.0 + std::exp(-eta[i]));
      const double var = std::max(p * (1.0 - p), 1e-12);
      mu[i] = p;
      w[i] = var;
      z[i] = eta[i] + (y[i] - p) / var;
    }
    Matrix weighted = w.cwiseSqrt().asDiagonal() * design;
    Vector target = w.cwiseSqrt().asDiagonal() * z;
    Vector next = weighted.colPivHouseholderQr().solve(target);
    const double step = (next - coef).cwiseAbs().maxCoeff();
    coef = next;
    if (step < tol) break;
  }
  return coef;
}

// Weighted Mann-Whitney statistic from point masses at scores: probability a
// diseased score exceeds a healthy one, ties counted half.
inline double weighted_mann_whitney(std::vector<double> scores, std::vector<double> fmass,
                                    std::vector<double> gmass) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double ftotal = 0.0, gtotal = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    ftotal += fmass[i];
    gtotal += gmass[i];
  }
  double acc = 0.0, g_below = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double u = scores[order[i]];
    double f_here = 0.0, g_here = 0.0;
    while (i < order.size() && scores[order[i]] == u) {
      f_here += fmass[order[i]];
      g_here += gmass[order[i]];
      ++i;
    }
    acc += f_here * (g_below + 0.5 * g_here);
    g_below += g_here;
  }
  return acc / (ftotal * gtotal);
}

}  // namespace msl::testing
