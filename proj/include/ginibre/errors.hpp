#pragma once

#include <stdexcept>
#include <string>

namespace ginibre {

enum class ErrorCode {
  InvalidArgument = 1,
  PalmDegeneracy = 2,
  DimensionMismatch = 3,
  ConvergenceFailure = 4,
  BudgetExceeded = 5,
  RejectionBudgetExceeded = 6,
  AnchorCollision = 7,
  QuadratureFailure = 8,
  Io = 9,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define GINIBRE_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message) : Error(ErrorCode::Name, message) {} \
  };

GINIBRE_DEFINE_ERROR(InvalidArgument)
GINIBRE_DEFINE_ERROR(PalmDegeneracy)
GINIBRE_DEFINE_ERROR(DimensionMismatch)
GINIBRE_DEFINE_ERROR(ConvergenceFailure)
GINIBRE_DEFINE_ERROR(BudgetExceeded)
GINIBRE_DEFINE_ERROR(RejectionBudgetExceeded)
GINIBRE_DEFINE_ERROR(AnchorCollision)
GINIBRE_DEFINE_ERROR(QuadratureFailure)
GINIBRE_DEFINE_ERROR(Io)

#undef GINIBRE_DEFINE_ERROR

}  // namespace ginibre
