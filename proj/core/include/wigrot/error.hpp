#pragma once

#include <stdexcept>
#include <string>

namespace wigrot {

enum class ErrorCode {
  HorizonSingularity,
  CoordinateSingularity,
  VarianceMismatch,
  StepTooLarge,
  InsideHorizon,
  TurningPoint,
  TurningPointReached,
  ConstraintDrift,
  HorizonApproach,
  AntipodalDirection,
  NonNull,
  DegenerateTransform,
  StepTooCoarse,
  RouteMismatch,
  NonTransverse,
  UnsupportedStructure,
  InvalidArgument,
  IoError,
  ConfigError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wigrot
