#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bertrand {

enum class ErrorCode {
  // bad inputs
  InvalidSpec,
  NonUnitField,
  NonUnitCoefficients,
  NonPositiveKappa,
  DegenerateParameters,
  OutOfBranchDomain,
  // geometry
  DegenerateSamples,
  NotRegular,
  OutOfDomain,
  FrameUndefined,
  NotOnUnitSphere,
  SpeedDrift,
  VanishingV,
  IncompleteGrid,
  // mate conditions
  ConditionViolated,
  NotBertrand,
  NoRealBranch,
  NotMates,
  DegenerateOffset,
  // files
  Io,
};

// Coarse grouping used for process exit codes.
enum class ErrorCategory { Config = 2, Geometry = 3, Condition = 4, Io = 5 };

ErrorCategory category_of(ErrorCode code) noexcept;
std::string_view to_string(ErrorCode code) noexcept;
std::string_view to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<double> locations = {});

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }
  int exit_code() const noexcept { return static_cast<int>(category()); }

  /// Parameter values where the failure was observed (e.g. s values with κ below threshold).
  const std::vector<double>& locations() const noexcept { return locations_; }

 private:
  ErrorCode code_;
  std::vector<double> locations_;
};

}  // namespace bertrand
