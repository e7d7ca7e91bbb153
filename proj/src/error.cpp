#include "anisoac/error.hpp"

namespace anisoac {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonBistable: return "NonBistable";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::EquipotentialViolated: return "EquipotentialViolated";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NegativeW: return "NegativeW";
    case ErrorCode::StallNearRoot: return "StallNearRoot";
    case ErrorCode::ToleranceFailure: return "ToleranceFailure";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::InnerSingularity: return "InnerSingularity";
    case ErrorCode::SingularEndpoint: return "SingularEndpoint";
    case ErrorCode::NotTangential: return "NotTangential";
    case ErrorCode::Blowup: return "Blowup";
    case ErrorCode::CFLViolated: return "CFLViolated";
    case ErrorCode::NoContour: return "NoContour";
    case ErrorCode::OpenContour: return "OpenContour";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::Extinction: return "Extinction";
    case ErrorCode::GradientDegeneracy: return "GradientDegeneracy";
    case ErrorCode::CeilingExceeded: return "CeilingExceeded";
    case ErrorCode::ExtinctionBeforeEnd: return "ExtinctionBeforeEnd";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace anisoac
