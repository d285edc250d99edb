// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_ERROR_HPP
#define MDLAWSON_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdlawson {

enum class ErrorCode {
  InvalidArgument,
  DuplicateNodes,
  DimensionMismatch,
  TooFewSamples,
  Breakdown,
  InfeasibleAfterFiltering,
  AllMassVanished,
  IllConditioned,
  MalformedDocument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateNodes: return "DuplicateNodes";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::Breakdown: return "Breakdown";
    case ErrorCode::InfeasibleAfterFiltering: return "InfeasibleAfterFiltering";
    case ErrorCode::AllMassVanished: return "AllMassVanished";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable code next to the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mdlawson

#endif  // MDLAWSON_ERROR_HPP
