#include "tactile/error.hpp"

namespace tactile {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "E_PARSE";
    case ErrorCode::DegenerateMesh: return "E_DEGENERATE_MESH";
    case ErrorCode::NonManifold: return "E_NON_MANIFOLD";
    case ErrorCode::ZeroDt: return "E_ZERO_DT";
    case ErrorCode::OutOfRange: return "E_OUT_OF_RANGE";
    case ErrorCode::DegenerateRay: return "E_DEGENERATE_RAY";
    case ErrorCode::InconsistentState: return "E_INCONSISTENT_STATE";
    case ErrorCode::CalibrationMissing: return "E_CALIBRATION_MISSING";
    case ErrorCode::AmplitudeOverflow: return "E_AMPLITUDE_OVERFLOW";
    case ErrorCode::BadSync: return "E_BAD_SYNC";
    case ErrorCode::BadCrc: return "E_BAD_CRC";
    case ErrorCode::BadLength: return "E_BAD_LENGTH";
    case ErrorCode::RegionOutOfRange: return "E_REGION_OUT_OF_RANGE";
    case ErrorCode::StepNotMultipleOf10uA: return "E_STEP_NOT_10UA";
    case ErrorCode::EmptyTrace: return "E_EMPTY_TRACE";
    case ErrorCode::NonMonotoneTimestamps: return "E_NON_MONOTONE";
    case ErrorCode::BadSpec: return "E_BAD_SPEC";
    case ErrorCode::BadRange: return "E_BAD_RANGE";
    case ErrorCode::ConfigError: return "E_CONFIG";
    case ErrorCode::IoError: return "E_IO";
  }
  return "E_UNKNOWN";
}

}  // namespace tactile
