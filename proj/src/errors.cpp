#include "rifclark/errors.hpp"

namespace rifclark {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegreeNotAttained: return "DegreeNotAttained";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::RootFindFailure: return "RootFindFailure";
    case ErrorCode::IdenticallyZeroSlice: return "IdenticallyZeroSlice";
    case ErrorCode::ContinuationCollision: return "ContinuationCollision";
    case ErrorCode::ZeroOverZero: return "ZeroOverZero";
    case ErrorCode::NonConstantDerivative: return "NonConstantDerivative";
    case ErrorCode::MassNotOne: return "MassNotOne";
    case ErrorCode::FitDegenerate: return "FitDegenerate";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace rifclark
