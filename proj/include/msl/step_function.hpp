#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "msl/common.hpp"

namespace msl {

//! Right-continuous nondecreasing step function with values in [0, 1]:
//! theta(t) = value at the largest knot <= t, extended as a constant on both
//! sides of the knot range. Immutable once built.
class StepFunction {
public:
  StepFunction(std::vector<double> knots, std::vector<double> values)
      : knots_(std::move(knots)), values_(std::move(values)) {
    require(!knots_.empty() && knots_.size() == values_.size(),
            ErrorCode::InvalidArgument, "knots/values must be non-empty and equal length");
    // 1e-12 slack: block means can land an ulp outside [0,1]
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      require(std::isfinite(knots_[i]) && std::isfinite(values_[i]),
              ErrorCode::InvalidArgument, "knots/values must be finite");
      require(values_[i] >= -1e-12 && values_[i] <= 1.0 + 1e-12,
              ErrorCode::InvalidArgument, "values must lie in [0, 1]");
      if (i > 0) {
        require(knots_[i] > knots_[i - 1], ErrorCode::InvalidArgument,
                "knots must be strictly increasing");
        require(values_[i] >= values_[i - 1], ErrorCode::InvalidArgument,
                "values must be nondecreasing");
      }
    }
  }

  double operator()(double t) const {
    require(std::isfinite(t), ErrorCode::InvalidArgument, "evaluation point must be finite");
    if (t < knots_.front()) return values_.front();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    return values_[static_cast<std::size_t>(it - knots_.begin()) - 1];
  }

  std::size_t size() const { return knots_.size(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

inline double step_eval(const StepFunction& theta, double t) { return theta(t); }

}  // namespace msl
