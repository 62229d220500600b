#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "msl/common.hpp"
#include "msl/kde.hpp"
#include "msl/rng.hpp"

namespace msl {

//! d independent univariate kernel draws.
inline Vector sample_from_kernel(const Kernel& kernel, int d, Rng& rng) {
  require(d >= 1, ErrorCode::InvalidArgument, "dimension must be positive");
  Vector u(d);
  for (int j = 0; j < d; ++j) u[j] = kernel.sample1(rng);
  return u;
}

//! Draws from the KDE mixture: pick a data row uniformly, add H * U with U
//! from the kernel. Rows of the result are i.i.d. KDE samples.
inline Matrix sample_from_kde(const KernelModel& model, int count, Rng& rng) {
  require(count >= 1, ErrorCode::InvalidArgument, "count must be positive");
  const int d = model.dim();
  Matrix out(count, d);
  for (int i = 0; i < count; ++i) {
    const auto row = static_cast<Eigen::Index>(rng.uniform_int(
        static_cast<std::uint64_t>(model.n())));
    for (int j = 0; j < d; ++j) {
      out(i, j) = model.data()(row, j) + model.bandwidth()[j] * model.kernel().sample1(rng);
    }
  }
  return out;
}

//! Monte Carlo discretization shared by every integral in a fit: the first N
//! rows are drawn from the f-model, the next N from the g-model; weights are
//! lambda / (1 - lambda) by block and r_i = lambda * f(Z_i) / psi(Z_i) is
//! cached per point. Immutable after construction.
class MonteCarloCloud {
public:
  const Matrix& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& ratios() const { return ratios_; }
  int half_size() const { return half_size_; }
  int size() const { return 2 * half_size_; }
  double lambda() const { return lambda_; }

  //! Projection scores beta^T Z_i for all cloud points.
  Vector scores(const Vector& beta) const {
    require(beta.size() == points_.cols(), ErrorCode::InvalidArgument,
            "beta dimension mismatch");
    return points_ * beta;
  }

  friend MonteCarloCloud build_cloud(const KernelModel&, const KernelModel&,
                                     double, int, Rng&);

private:
  MonteCarloCloud() = default;

  Matrix points_;
  std::vector<double> weights_;
  std::vector<double> ratios_;
  int half_size_ = 0;
  double lambda_ = 0.0;
};

inline MonteCarloCloud build_cloud(const KernelModel& fmodel, const KernelModel& gmodel,
                                   double lambda, int N, Rng& rng) {
  require(lambda > 0.0 && lambda < 1.0, ErrorCode::InvalidArgument,
          "lambda must lie in (0, 1)");
  require(N >= 1, ErrorCode::InvalidArgument, "N must be positive");
  require(fmodel.dim() == gmodel.dim(), ErrorCode::InvalidArgument,
          "f and g models must share a dimension");

  const int d = fmodel.dim();
  MonteCarloCloud cloud;
  cloud.points_.resize(2 * N, d);
  cloud.weights_.resize(static_cast<std::size_t>(2 * N));
  cloud.ratios_.resize(static_cast<std::size_t>(2 * N));
  cloud.half_size_ = N;
  cloud.lambda_ = lambda;

  // A balanced row assignment (every data row drawn floor(N/n) or one more
  // time, in shuffled order) removes the multinomial share of the Monte Carlo
  // noise; each point is still a draw from the KDE mixture, so the weighted
  // sums estimate the same integrals with less variance.
  auto balanced_rows = [&rng](int rows, int draws) {
    std::vector<Eigen::Index> assignment(static_cast<std::size_t>(draws));
    for (int i = 0; i < draws; ++i) {
      assignment[static_cast<std::size_t>(i)] = static_cast<Eigen::Index>(i % rows);
    }
    for (int i = draws - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i + 1)));
      std::swap(assignment[static_cast<std::size_t>(i)], assignment[static_cast<std::size_t>(j)]);
    }
    return assignment;
  };
  const std::vector<Eigen::Index> f_rows = balanced_rows(fmodel.n(), N);
  const std::vector<Eigen::Index> g_rows = balanced_rows(gmodel.n(), N);

  // Compact-support kernels can put a draw where the opposite density is an
  // exact zero; the cached ratio is clamped a hair inside (0, 1) there, which
  // keeps the strict range invariant without biasing the integral the way a
  // redraw would. Points where the pooled density itself underflows are
  // redrawn (at most 100 attempts).
  constexpr double ratio_clamp = 1e-15;
  Vector z(d);
  for (int i = 0; i < 2 * N; ++i) {
    const KernelModel& source = (i < N) ? fmodel : gmodel;
    const Eigen::Index row =
        (i < N) ? f_rows[static_cast<std::size_t>(i)] : g_rows[static_cast<std::size_t>(i - N)];
    int attempts = 0;
    for (;;) {
      for (int j = 0; j < d; ++j) {
        z[j] = source.data()(row, j) + source.bandwidth()[j] * source.kernel().sample1(rng);
      }
      const double ft = fmodel.density(z);
      const double gt = gmodel.density(z);
      const double psi = lambda * ft + (1.0 - lambda) * gt;
      if (std::isfinite(psi) && psi >= 1e-300) {
        double r = lambda * ft / psi;
        r = std::min(std::max(r, ratio_clamp), 1.0 - ratio_clamp);
        cloud.points_.row(i) = z;
        cloud.ratios_[static_cast<std::size_t>(i)] = r;
        break;
      }
      if (++attempts > 100) {
        fail(ErrorCode::SamplingFailure,
             "could not draw a cloud point with positive pooled density");
      }
    }
    cloud.weights_[static_cast<std::size_t>(i)] = (i < N) ? lambda : 1.0 - lambda;
  }
  return cloud;
}

}  // namespace msl
