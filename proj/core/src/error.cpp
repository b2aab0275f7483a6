#include "qberry/error.hpp"

namespace qberry {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AllCoefficientsZero: return "AllCoefficientsZero";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotQuadrupolar: return "NotQuadrupolar";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::OrthogonalNeighbors: return "OrthogonalNeighbors";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::InvalidLoop: return "InvalidLoop";
    case ErrorCode::StepTooCoarse: return "StepTooCoarse";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::StarCollision: return "StarCollision";
    case ErrorCode::InconsistentPhases: return "InconsistentPhases";
    case ErrorCode::GapClosure: return "GapClosure";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NonCyclic: return "NonCyclic";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace qberry
