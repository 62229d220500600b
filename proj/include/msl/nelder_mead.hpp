#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "msl/common.hpp"

namespace msl {

struct NelderMeadOptions {
  double tol = 1e-6;       // stop when the simplex f-spread falls below this
  int max_iter = 500;
  double init_step = 0.5;  // relative edge length of the initial simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double fmin = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

//! Downhill-simplex minimizer (reflection 1, expansion 2, contraction 0.5,
//! shrink 0.5). Non-finite objective values are treated as +inf, which lets
//! callers encode box constraints as penalties.
inline NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& x0, const NelderMeadOptions& opt) {
  require(!x0.empty(), ErrorCode::InvalidArgument, "empty start point");
  const std::size_t n = x0.size();

  NelderMeadResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double f = objective(x);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fx(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    simplex[j + 1][j] += opt.init_step * std::max(1.0, std::abs(x0[j]));
  }
  for (std::size_t j = 0; j <= n; ++j) fx[j] = eval(simplex[j]);

  std::vector<std::size_t> idx(n + 1);
  auto order = [&]() {
    for (std::size_t j = 0; j <= n; ++j) idx[j] = j;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
  };

  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  for (; result.iterations < opt.max_iter; ++result.iterations) {
    order();
    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];
    if (std::isfinite(fx[best]) && fx[worst] - fx[best] <= opt.tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[j][k];
    }
    for (std::size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

    for (std::size_t k = 0; k < n; ++k) xr[k] = 2.0 * centroid[k] - simplex[worst][k];
    const double fr = eval(xr);

    if (fr < fx[best]) {
      for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + 2.0 * (xr[k] - centroid[k]);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fx[worst] = fe;
      } else {
        simplex[worst] = xr;
        fx[worst] = fr;
      }
    } else if (fr < fx[second]) {
      simplex[worst] = xr;
      fx[worst] = fr;
    } else {
      const bool outside = fr < fx[worst];
      const std::vector<double>& toward = outside ? xr : simplex[worst];
      for (std::size_t k = 0; k < n; ++k) xc[k] = centroid[k] + 0.5 * (toward[k] - centroid[k]);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fx[worst])) {
        simplex[worst] = xc;
        fx[worst] = fc;
      } else {
        for (std::size_t j = 0; j <= n; ++j) {
          if (j == best) continue;
          for (std::size_t k = 0; k < n; ++k) {
            simplex[j][k] = simplex[best][k] + 0.5 * (simplex[j][k] - simplex[best][k]);
          }
          fx[j] = eval(simplex[j]);
        }
      }
    }
  }

  order();
  result.x = simplex[idx[0]];
  result.fmin = fx[idx[0]];
  return result;
}

}  // namespace msl
