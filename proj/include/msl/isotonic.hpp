#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "msl/common.hpp"
#include "msl/sampling.hpp"
#include "msl/step_function.hpp"

namespace msl {

//! Weighted least-squares isotonic regression instance: minimize
//! sum_i w_i (r_i - theta(s_i))^2 over nondecreasing theta. Positions may be
//! unsorted; ties at equal positions are merged before pooling.
struct IsotonicProblem {
  std::vector<double> positions;
  std::vector<double> responses;
  std::vector<double> weights;

  std::size_t size() const { return positions.size(); }

  void validate() const {
    require(!positions.empty(), ErrorCode::EmptyProblem, "isotonic problem is empty");
    require(positions.size() == responses.size() && positions.size() == weights.size(),
            ErrorCode::InvalidArgument, "positions/responses/weights length mismatch");
    for (std::size_t i = 0; i < positions.size(); ++i) {
      require(std::isfinite(positions[i]) && std::isfinite(responses[i]) &&
                  std::isfinite(weights[i]),
              ErrorCode::InvalidArgument, "isotonic problem has non-finite entries");
      require(weights[i] > 0.0, ErrorCode::InvalidArgument, "weights must be positive");
    }
  }
};

//! PAVA output: the step representation (one knot per pooled block, placed at
//! the block's smallest position) plus the fitted value at every input index.
struct IsotonicFit {
  std::vector<double> knots;
  std::vector<double> block_values;
  std::vector<double> fitted;  // aligned with the problem's input order

  StepFunction step() const { return StepFunction(knots, block_values); }
};

namespace detail {

// Neumaier-compensated running sum; blocks pooled out of thousands of points
// keep their means accurate to a couple of ulps, which the weighted-mean
// identity checks rely on.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum);
    comp += other.comp;
  }

  double value() const { return sum + comp; }
};

}  // namespace detail

//! Pool-adjacent-violators solver over tie-merged observations.
inline IsotonicFit isotonic_regression(const IsotonicProblem& problem) {
  problem.validate();
  const std::size_t L = problem.size();

  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return problem.positions[a] < problem.positions[b];
  });

  struct Block {
    double knot;                 // smallest position in the block
    detail::CompensatedSum swr;  // sum of w*r
    detail::CompensatedSum sw;   // sum of w
    double value;                // swr / sw
    std::size_t count;           // merged observations covered
  };

  std::vector<Block> blocks;
  blocks.reserve(L);

  std::size_t i = 0;
  while (i < L) {
    // merge ties at equal positions into one observation; a group with one
    // response value takes it exactly, which makes refits of fitted values
    // reproduce themselves
    const double pos = problem.positions[order[i]];
    const double first_response = problem.responses[order[i]];
    bool all_equal = true;
    Block block;
    block.knot = pos;
    block.count = 0;
    while (i < L && problem.positions[order[i]] == pos) {
      block.swr.add(problem.weights[order[i]] * problem.responses[order[i]]);
      block.sw.add(problem.weights[order[i]]);
      all_equal = all_equal && problem.responses[order[i]] == first_response;
      ++block.count;
      ++i;
    }
    block.value = all_equal ? first_response : block.swr.value() / block.sw.value();
    blocks.push_back(block);
    // pool while the monotone constraint is violated
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].value > blocks.back().value) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      prev.swr.merge(top.swr);
      prev.sw.merge(top.sw);
      prev.count += top.count;
      prev.value = prev.swr.value() / prev.sw.value();
    }
  }

  IsotonicFit fit;
  fit.knots.reserve(blocks.size());
  fit.block_values.reserve(blocks.size());
  fit.fitted.resize(L);
  std::size_t k = 0;
  for (const Block& b : blocks) {
    fit.knots.push_back(b.knot);
    fit.block_values.push_back(b.value);
    for (std::size_t c = 0; c < b.count; ++c) {
      fit.fitted[order[k]] = b.value;
      ++k;
    }
  }
  return fit;
}

inline StepFunction solve_pava(const IsotonicProblem& problem) {
  return isotonic_regression(problem).step();
}

//! The profile theta for a direction: isotonic regression of the cached cloud
//! ratios against the projection scores, weighted by the cloud block weights.
inline StepFunction theta_beta(const MonteCarloCloud& cloud, const Vector& beta) {
  require(beta.allFinite() && beta.norm() > 0.0, ErrorCode::InvalidArgument,
          "beta must be finite and nonzero");
  const Vector s = cloud.scores(beta);
  IsotonicProblem problem;
  problem.positions.assign(s.data(), s.data() + s.size());
  problem.responses = cloud.ratios();
  problem.weights = cloud.weights();
  return solve_pava(problem);
}

}  // namespace msl
