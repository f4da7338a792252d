#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sliceob {

/// Machine-readable failure codes. Every exception thrown by the library
/// carries one of these; the CLI reports them verbatim.
enum class ErrorCode {
  NotDivisible,
  DivisionByZero,
  ConductorMismatch,
  NotDivisor,
  SizeMismatch,
  ClosureBudgetExceeded,
  InternalDivisibilityFailure,
  DimensionMismatch,
  InvalidSeifert,
  InadmissiblePsi,
  RankTooLarge,
  CrossCheckMismatch,
  NotPGroup,
  FactorizationBudgetExceeded,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotDivisible: return "NOT_DIVISIBLE";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::ConductorMismatch: return "CONDUCTOR_MISMATCH";
    case ErrorCode::NotDivisor: return "NOT_DIVISOR";
    case ErrorCode::SizeMismatch: return "SIZE_MISMATCH";
    case ErrorCode::ClosureBudgetExceeded: return "CLOSURE_BUDGET_EXCEEDED";
    case ErrorCode::InternalDivisibilityFailure: return "INTERNAL_DIVISIBILITY_FAILURE";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::InvalidSeifert: return "INVALID_SEIFERT";
    case ErrorCode::InadmissiblePsi: return "INADMISSIBLE_PSI";
    case ErrorCode::RankTooLarge: return "RANK_TOO_LARGE";
    case ErrorCode::CrossCheckMismatch: return "CROSS_CHECK_MISMATCH";
    case ErrorCode::NotPGroup: return "NOT_P_GROUP";
    case ErrorCode::FactorizationBudgetExceeded: return "FACTORIZATION_BUDGET_EXCEEDED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::ParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sliceob
