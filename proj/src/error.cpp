#include "bertrand/error.hpp"

namespace bertrand {

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec:
    case ErrorCode::NonUnitField:
    case ErrorCode::NonUnitCoefficients:
    case ErrorCode::NonPositiveKappa:
    case ErrorCode::DegenerateParameters:
    case ErrorCode::OutOfBranchDomain:
      return ErrorCategory::Config;
    case ErrorCode::DegenerateSamples:
    case ErrorCode::NotRegular:
    case ErrorCode::OutOfDomain:
    case ErrorCode::FrameUndefined:
    case ErrorCode::NotOnUnitSphere:
    case ErrorCode::SpeedDrift:
    case ErrorCode::VanishingV:
    case ErrorCode::IncompleteGrid:
      return ErrorCategory::Geometry;
    case ErrorCode::ConditionViolated:
    case ErrorCode::NotBertrand:
    case ErrorCode::NoRealBranch:
    case ErrorCode::NotMates:
    case ErrorCode::DegenerateOffset:
      return ErrorCategory::Condition;
    case ErrorCode::Io:
      return ErrorCategory::Io;
  }
  return ErrorCategory::Config;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NonUnitField: return "NonUnitField";
    case ErrorCode::NonUnitCoefficients: return "NonUnitCoefficients";
    case ErrorCode::NonPositiveKappa: return "NonPositiveKappa";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::OutOfBranchDomain: return "OutOfBranchDomain";
    case ErrorCode::DegenerateSamples: return "DegenerateSamples";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::FrameUndefined: return "FrameUndefined";
    case ErrorCode::NotOnUnitSphere: return "NotOnUnitSphere";
    case ErrorCode::SpeedDrift: return "SpeedDrift";
    case ErrorCode::VanishingV: return "VanishingV";
    case ErrorCode::IncompleteGrid: return "IncompleteGrid";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::NotBertrand: return "NotBertrand";
    case ErrorCode::NoRealBranch: return "NoRealBranch";
    case ErrorCode::NotMates: return "NotMates";
    case ErrorCode::DegenerateOffset: return "DegenerateOffset";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Config: return "ConfigError";
    case ErrorCategory::Geometry: return "GeometryError";
    case ErrorCategory::Condition: return "ConditionError";
    case ErrorCategory::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::vector<double> locations)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      locations_(std::move(locations)) {}

}  // namespace bertrand
