#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tactile {

enum class ErrorCode {
  ParseError,
  DegenerateMesh,
  NonManifold,
  ZeroDt,
  OutOfRange,
  DegenerateRay,
  InconsistentState,
  CalibrationMissing,
  AmplitudeOverflow,
  BadSync,
  BadCrc,
  BadLength,
  RegionOutOfRange,
  StepNotMultipleOf10uA,
  EmptyTrace,
  NonMonotoneTimestamps,
  BadSpec,
  BadRange,
  ConfigError,
  IoError,
};

// Stable identifier printed in diagnostics, e.g. "E_PARSE".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tactile
