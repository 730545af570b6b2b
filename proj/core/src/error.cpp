#include "wigrot/error.hpp"

namespace wigrot {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::HorizonSingularity: return "HorizonSingularity";
    case ErrorCode::CoordinateSingularity: return "CoordinateSingularity";
    case ErrorCode::VarianceMismatch: return "VarianceMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::InsideHorizon: return "InsideHorizon";
    case ErrorCode::TurningPoint: return "TurningPoint";
    case ErrorCode::TurningPointReached: return "TurningPointReached";
    case ErrorCode::ConstraintDrift: return "ConstraintDrift";
    case ErrorCode::HorizonApproach: return "HorizonApproach";
    case ErrorCode::AntipodalDirection: return "AntipodalDirection";
    case ErrorCode::NonNull: return "NonNull";
    case ErrorCode::DegenerateTransform: return "DegenerateTransform";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::RouteMismatch: return "RouteMismatch";
    case ErrorCode::NonTransverse: return "NonTransverse";
    case ErrorCode::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace wigrot
