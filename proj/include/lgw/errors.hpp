#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgw {

enum class ErrorKind {
  // input/domain violations
  NonFinite,
  BranchSingularity,
  BranchPointSingularity,
  DomainError,
  TermLimitExceeded,
  DegenerateCoefficients,
  ZeroLogUnit,
  InvalidUnitInput,
  NotSquarefree,
  DegenerateD,
  OddDegree,
  NotImaginary,
  NotFundamental,
  SquareDiscriminant,
  // numerical failures
  NoConvergence,
  PrecisionLoss,
};

/// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory { Domain, Numerical };

constexpr ErrorCategory category(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::PrecisionLoss:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Domain;
  }
}

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lgw
