// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riley {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  IoError,
  NotTwoBridge,
  NotAKnot,
  DegenerateEntry,
  ZeroT,
  NonPositiveArgument,
  ZeroB,
  EvenSlopeComponent,
  NoRealSeed,
  GuardDegenerate,
  CorrectorDiverged,
  OutOfRange,
  Inadmissible,
  RecheckFailed,
  TorusKnot,
  EvenD,
};

/// Domain errors describe inputs the mathematics rejects; numerical errors
/// describe a computation that failed to converge or to re-verify.
enum class ErrorCategory { domain, numerical };

std::string_view error_code_name(ErrorCode code) noexcept;
ErrorCategory error_category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return error_category(code_); }

 private:
  ErrorCode code_;
};

}  // namespace riley
