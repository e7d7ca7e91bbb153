#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anisoac {

enum class ErrorCode {
  NonBistable,
  NotElliptic,
  EquipotentialViolated,
  NotUnit,
  QuadratureFailure,
  NegativeW,
  StallNearRoot,
  ToleranceFailure,
  NotSolvable,
  InnerSingularity,
  SingularEndpoint,
  NotTangential,
  Blowup,
  CFLViolated,
  NoContour,
  OpenContour,
  DegenerateCurve,
  SelfIntersection,
  Extinction,
  GradientDegeneracy,
  CeilingExceeded,
  ExtinctionBeforeEnd,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (tests, the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace anisoac
