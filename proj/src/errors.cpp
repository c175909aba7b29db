#include "ginibre/errors.hpp"

namespace ginibre {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PalmDegeneracy: return "PalmDegeneracy";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::AnchorCollision: return "AnchorCollision";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace ginibre
