#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlace {

enum class ErrorCode {
  DimensionMismatch,
  BackendMismatch,
  CapExceeded,
  InvalidArgument,
  NotRealRooted,
  NotHyperbolic,
  NoStructuralRule,
  PreconditionViolated,
  OutsideCone,
  ConeBoundary,
  BoundaryUndecided,
  Infeasible,
  Malformed,
  BudgetExceeded,
  ExchangeAxiom,
  ParseError,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Optional witness attached to the failure (a counterexample point, a
  /// violating subset, ...), rendered as exact strings.
  const std::vector<std::string>& witness() const noexcept { return witness_; }

  Error& with_witness(std::vector<std::string> w) {
    witness_ = std::move(w);
    return *this;
  }

 private:
  ErrorCode code_;
  std::vector<std::string> witness_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace hyperlace
