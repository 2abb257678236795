#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace excess_kit {

enum class ErrorCode {
  NotInSpan,
  NotABasis,
  EffortExceeded,
  InvalidProfile,
  NegativeB2,
  SignatureExceedsRank,
  EmptyFamily,
  InvalidGenus,
  DimensionMismatch,
  NotModTwoNull,
  OddEulerNumber,
  NotAPlaneFamily,
  EulerTooSmall,
  ParseError,
  UnknownProfile,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::NotABasis: return "NotABasis";
    case ErrorCode::EffortExceeded: return "EffortExceeded";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NegativeB2: return "NegativeB2";
    case ErrorCode::SignatureExceedsRank: return "SignatureExceedsRank";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::InvalidGenus: return "InvalidGenus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotModTwoNull: return "NotModTwoNull";
    case ErrorCode::OddEulerNumber: return "OddEulerNumber";
    case ErrorCode::NotAPlaneFamily: return "NotAPlaneFamily";
    case ErrorCode::EulerTooSmall: return "EulerTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownProfile: return "UnknownProfile";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace excess_kit
