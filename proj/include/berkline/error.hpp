#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace berkline {

enum class ErrorCode {
  InvalidArgument,
  ZeroToZeroPower,
  PrecisionExhausted,
  IndeterminateValuation,
  DivisorCollision,
  NotContractive,
  TruncationInsufficient,
  IdentityViolation,
  UnsupportedDescriptor,
  IllConditioned,
  LiftingFailed,
};

std::string_view error_code_name(ErrorCode code);

/// Precision-class errors map to a different CLI exit status than domain errors.
bool is_precision_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace berkline
