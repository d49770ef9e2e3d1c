#include "lgw/errors.hpp"

namespace lgw {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BranchSingularity: return "BranchSingularity";
    case ErrorKind::BranchPointSingularity: return "BranchPointSingularity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::TermLimitExceeded: return "TermLimitExceeded";
    case ErrorKind::DegenerateCoefficients: return "DegenerateCoefficients";
    case ErrorKind::ZeroLogUnit: return "ZeroLogUnit";
    case ErrorKind::InvalidUnitInput: return "InvalidUnitInput";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::DegenerateD: return "DegenerateD";
    case ErrorKind::OddDegree: return "OddDegree";
    case ErrorKind::NotImaginary: return "NotImaginary";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::SquareDiscriminant: return "SquareDiscriminant";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
  }
  return "Unknown";
}

}  // namespace lgw
