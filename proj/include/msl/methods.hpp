#pragma once

#include <string>

#include "msl/baselines.hpp"
#include "msl/common.hpp"
#include "msl/estimator.hpp"
#include "msl/roc.hpp"

namespace msl {

enum class MethodKind { Msl, ExpTilting, Mh };

inline const char* method_name(MethodKind k) {
  switch (k) {
    case MethodKind::Msl: return "msl";
    case MethodKind::ExpTilting: return "exp_tilting";
    case MethodKind::Mh: return "mh";
  }
  return "?";
}

inline MethodKind method_from_name(const std::string& s) {
  if (s == "msl") return MethodKind::Msl;
  if (s == "exp_tilting") return MethodKind::ExpTilting;
  if (s == "mh") return MethodKind::Mh;
  fail(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

//! Direction estimate plus score CDFs from one method. The smoothed
//! likelihood fit provides model-based CDFs over its cloud; the baseline
//! methods only give a direction, so their CDFs are the empirical ones of the
//! scored data.
struct MethodEstimate {
  MethodKind method = MethodKind::Msl;
  Vector beta_unit;
  ScoreCdf cdf;
};

inline MethodEstimate run_method(MethodKind method, const Matrix& X, const Matrix& Y,
                                 const FitConfig& config) {
  MethodEstimate est;
  est.method = method;
  if (method == MethodKind::Msl) {
    const FitResult fr = fit(X, Y, config);
    est.beta_unit = fr.beta_unit;
    est.cdf = score_cdfs(fr);
  } else {
    const BaselineResult br =
        method == MethodKind::ExpTilting ? fit_exp_tilting(X, Y) : fit_mh_auc(X, Y);
    est.beta_unit = br.beta_unit;
    est.cdf = empirical_score_cdf(X * br.beta_unit, Y * br.beta_unit);
  }
  return est;
}

}  // namespace msl
