// SPDX-License-Identifier: Apache-2.0

#include "riley/error.hpp"

namespace riley {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotTwoBridge: return "NotTwoBridge";
    case ErrorCode::NotAKnot: return "NotAKnot";
    case ErrorCode::DegenerateEntry: return "DegenerateEntry";
    case ErrorCode::ZeroT: return "ZeroT";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::ZeroB: return "ZeroB";
    case ErrorCode::EvenSlopeComponent: return "EvenSlopeComponent";
    case ErrorCode::NoRealSeed: return "NoRealSeed";
    case ErrorCode::GuardDegenerate: return "GuardDegenerate";
    case ErrorCode::CorrectorDiverged: return "CorrectorDiverged";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Inadmissible: return "Inadmissible";
    case ErrorCode::RecheckFailed: return "RecheckFailed";
    case ErrorCode::TorusKnot: return "TorusKnot";
    case ErrorCode::EvenD: return "EvenD";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroB:
    case ErrorCode::GuardDegenerate:
    case ErrorCode::CorrectorDiverged:
    case ErrorCode::RecheckFailed:
      return ErrorCategory::numerical;
    default:
      return ErrorCategory::domain;
  }
}

}  // namespace riley
