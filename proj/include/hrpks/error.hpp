#pragma once

#include <stdexcept>
#include <string>

namespace hrpks {

enum class ErrorCode {
  kParse,
  kInvariant,
  kNotPrime,
  kBadReduction,
  kNotOnCurve,
  kUnknownCurve,
  kScalarTooLarge,
  kLengthMismatch,
  kDepthLimit,
  kInconsistentSystem,
  kDuplicate,
  kSignerRevoked,
  kRetryExhausted,
  kGuardExceeded,
  kUnsupported,
  kNoAnnihilator,
  kSetupFailed,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kInvariant: return "INVARIANT_VIOLATION";
    case ErrorCode::kNotPrime: return "NOT_PRIME";
    case ErrorCode::kBadReduction: return "BAD_REDUCTION";
    case ErrorCode::kNotOnCurve: return "NOT_ON_CURVE";
    case ErrorCode::kUnknownCurve: return "UNKNOWN_CURVE";
    case ErrorCode::kScalarTooLarge: return "SCALAR_TOO_LARGE";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kDepthLimit: return "DEPTH_LIMIT";
    case ErrorCode::kInconsistentSystem: return "INCONSISTENT_SYSTEM";
    case ErrorCode::kDuplicate: return "DUPLICATE";
    case ErrorCode::kSignerRevoked: return "SIGNER_REVOKED";
    case ErrorCode::kRetryExhausted: return "RETRY_EXHAUSTED";
    case ErrorCode::kGuardExceeded: return "GUARD_EXCEEDED";
    case ErrorCode::kUnsupported: return "UNSUPPORTED";
    case ErrorCode::kNoAnnihilator: return "NO_ANNIHILATOR";
    case ErrorCode::kSetupFailed: return "SETUP_FAILED";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hrpks
