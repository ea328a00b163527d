#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace siegelcong {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  DenominatorDivisible,
  InvalidPair,
  TrivialM1,
  PDividesConductor,
  MixedDegrees,
  OutOfRegion,
  IdentityMismatch,
  ConstructionFailure,
  UnknownCheck,
  ConfigError,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NotPrime: return "NOT_PRIME";
    case ErrorCode::DenominatorDivisible: return "DENOMINATOR_DIVISIBLE";
    case ErrorCode::InvalidPair: return "INVALID_PAIR";
    case ErrorCode::TrivialM1: return "TRIVIAL_M1";
    case ErrorCode::PDividesConductor: return "P_DIVIDES_CONDUCTOR";
    case ErrorCode::MixedDegrees: return "MIXED_DEGREES";
    case ErrorCode::OutOfRegion: return "OUT_OF_REGION";
    case ErrorCode::IdentityMismatch: return "IDENTITY_MISMATCH";
    case ErrorCode::ConstructionFailure: return "CONSTRUCTION_FAILURE";
    case ErrorCode::UnknownCheck: return "UNKNOWN_CHECK";
    case ErrorCode::ConfigError: return "CONFIG_ERROR";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace siegelcong
