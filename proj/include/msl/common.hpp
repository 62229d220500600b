#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace msl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ErrorCode {
  InvalidArgument,
  DegenerateColumn,
  QuadratureFailure,
  EmptyProblem,
  OptimizerFailure,
  SamplingFailure,
  Separation,
  RankDeficient,
  ZeroMass,
  MissingColumn,
  EmptyAfterFilter,
  ParseError,
  TooManyFailures,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::EmptyProblem: return "EmptyProblem";
    case ErrorCode::OptimizerFailure: return "OptimizerFailure";
    case ErrorCode::SamplingFailure: return "SamplingFailure";
    case ErrorCode::Separation: return "Separation";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooManyFailures: return "TooManyFailures";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// CLI contract: 1 = usage, 2 = data, 3 = numerical failure.
inline int error_exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return 1;
    case ErrorCode::DegenerateColumn:
    case ErrorCode::MissingColumn:
    case ErrorCode::EmptyAfterFilter:
    case ErrorCode::ParseError:
      return 2;
    default:
      return 3;
  }
}

[[noreturn]] inline void fail(ErrorCode c, const std::string& message) {
  throw Error(c, message);
}

inline void require(bool ok, ErrorCode c, const std::string& message) {
  if (!ok) fail(c, message);
}

}  // namespace msl
