#include "nevlab/errors.hpp"

namespace nevlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::NotMeromorphic: return "NotMeromorphic";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::QuadratureNoConverge: return "QuadratureNoConverge";
    case ErrorCode::WindingUnstable: return "WindingUnstable";
    case ErrorCode::TailTooShort: return "TailTooShort";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NoneSatisfied: return "NoneSatisfied";
    case ErrorCode::MissingSolutionBase: return "MissingSolutionBase";
    case ErrorCode::PredicateOscillation: return "PredicateOscillation";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotMeromorphic:
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::TailTooShort:
    case ErrorCode::MixedKinds:
    case ErrorCode::MissingSolutionBase:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error(ErrorCode::ParseError, message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace nevlab
