#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qberry {

enum class ErrorCode {
  AllCoefficientsZero,
  NotHermitian,
  NotUnitary,
  NotNormalized,
  OutOfRange,
  NotQuadrupolar,
  AllZero,
  OrthogonalNeighbors,
  DegeneratePair,
  InvalidLoop,
  StepTooCoarse,
  NotClosed,
  StarCollision,
  InconsistentPhases,
  GapClosure,
  ConditionViolated,
  ZeroDenominator,
  NonCyclic,
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failed
/// contract so callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qberry
