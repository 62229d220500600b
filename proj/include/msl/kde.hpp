#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "msl/bandwidth.hpp"
#include "msl/common.hpp"
#include "msl/kernels.hpp"

namespace msl {

//! Product-kernel density estimate over an n x d data matrix. Evaluation is
//! exact O(n) per query point; the model is immutable after construction and
//! safe to share across threads.
class KernelModel {
public:
  KernelModel(Matrix data, Bandwidth bandwidth, Kernel kernel)
      : data_(std::move(data)),
        bandwidth_(std::move(bandwidth)),
        kernel_(kernel),
        inv_det_(1.0 / bandwidth_.det()) {
    require(data_.rows() >= 2, ErrorCode::InvalidArgument, "need at least 2 rows");
    require(data_.cols() == bandwidth_.dim(), ErrorCode::InvalidArgument,
            "bandwidth dimension must match data");
    require(data_.allFinite(), ErrorCode::InvalidArgument,
            "data has non-finite entries");
  }

  int n() const { return static_cast<int>(data_.rows()); }
  int dim() const { return static_cast<int>(data_.cols()); }
  const Matrix& data() const { return data_; }
  const Bandwidth& bandwidth() const { return bandwidth_; }
  const Kernel& kernel() const { return kernel_; }

  //! (1/n) sum_i |H|^{-1} K(H^{-1}(x - X_i)), nonnegative. Per-point terms
  //! are summed in sorted order, so the value does not depend on the row
  //! order of the data.
  double density(const Vector& x) const {
    require(x.size() == data_.cols(), ErrorCode::InvalidArgument,
            "query dimension mismatch");
    require(x.allFinite(), ErrorCode::InvalidArgument, "query is not finite");
    static thread_local std::vector<double> terms;
    terms.clear();
    terms.reserve(static_cast<std::size_t>(data_.rows()));
    for (Eigen::Index i = 0; i < data_.rows(); ++i) {
      double prod = 1.0;
      for (Eigen::Index j = 0; j < data_.cols(); ++j) {
        prod *= kernel_.pdf1((x[j] - data_(i, j)) / bandwidth_[static_cast<int>(j)]);
        if (prod == 0.0) break;
      }
      if (prod != 0.0) terms.push_back(prod);
    }
    std::sort(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc * inv_det_ / static_cast<double>(data_.rows());
  }

private:
  Matrix data_;
  Bandwidth bandwidth_;
  Kernel kernel_;
  double inv_det_;
};

inline double kde_eval(const KernelModel& model, const Vector& x) {
  return model.density(x);
}

//! Pooled density psi = lambda * f_n + (1 - lambda) * g_m at x.
inline double psi_eval(const KernelModel& fmodel, const KernelModel& gmodel,
                       double lambda, const Vector& x) {
  require(lambda > 0.0 && lambda < 1.0, ErrorCode::InvalidArgument,
          "lambda must lie in (0, 1)");
  return lambda * fmodel.density(x) + (1.0 - lambda) * gmodel.density(x);
}

//! Outer quadrature grid for l1_smoothing_bias.
struct QuadratureGrid {
  double lo = -10.0;
  double hi = 10.0;
  int points = 2001;       // outer Simpson nodes, odd
  int kernel_points = 401; // inner Simpson nodes over the kernel support, odd
};

//! Numerical L1 distance between K_h * f and f for a univariate density f.
//! Used by rate checks; the convolution is evaluated by nested Simpson rules.
inline double l1_smoothing_bias(const std::function<double(double)>& density,
                                const Kernel& kernel, double h,
                                const QuadratureGrid& grid) {
  require(h > 0.0, ErrorCode::InvalidArgument, "h must be positive");
  require(grid.points >= 3 && grid.points % 2 == 1, ErrorCode::InvalidArgument,
          "outer grid needs an odd point count >= 3");
  require(grid.kernel_points >= 3 && grid.kernel_points % 2 == 1,
          ErrorCode::InvalidArgument, "inner grid needs an odd point count >= 3");

  const double radius = kernel.support_radius();
  const int m = grid.kernel_points - 1;
  const double du = 2.0 * radius / m;

  auto smoothed = [&](double x) {
    // (K_h * f)(x) = int K(u) f(x - h u) du
    double sum = kernel.pdf1(-radius) * density(x + h * radius) +
                 kernel.pdf1(radius) * density(x - h * radius);
    for (int i = 1; i < m; ++i) {
      const double u = -radius + du * i;
      sum += ((i % 2 == 0) ? 2.0 : 4.0) * kernel.pdf1(u) * density(x - h * u);
    }
    return sum * du / 3.0;
  };

  const int outer = grid.points - 1;
  const double dx = (grid.hi - grid.lo) / outer;
  auto integrand = [&](double x) { return std::abs(smoothed(x) - density(x)); };
  double sum = integrand(grid.lo) + integrand(grid.hi);
  for (int i = 1; i < outer; ++i) {
    sum += ((i % 2 == 0) ? 2.0 : 4.0) * integrand(grid.lo + dx * i);
  }
  const double result = sum * dx / 3.0;
  require(std::isfinite(result), ErrorCode::QuadratureFailure,
          "smoothing-bias quadrature did not produce a finite value");
  return result;
}

}  // namespace msl
