#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rifclark {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  ZeroPolynomial,
  DegreeNotAttained,
  NotStable,
  RootFindFailure,
  IdenticallyZeroSlice,
  ContinuationCollision,
  ZeroOverZero,
  NonConstantDerivative,
  MassNotOne,
  FitDegenerate,
  PreconditionFailed,
  NonConvergent,
  DenominatorVanishes,
  SingularDenominator,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` tells
/// callers (and the CLI's error JSON) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rifclark
