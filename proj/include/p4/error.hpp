#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace p4eval {

enum class Errc {
  EmptyMatrix,
  NegativeCount,
  EmptyInput,
  RangeMismatch,
  DegeneratePopulation,
  BadGrid,
  NoDefinedPoints,
  InvalidArgument,
  Parse,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyMatrix: return "EmptyMatrix";
    case Errc::NegativeCount: return "NegativeCount";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::RangeMismatch: return "RangeMismatch";
    case Errc::DegeneratePopulation: return "DegeneratePopulation";
    case Errc::BadGrid: return "BadGrid";
    case Errc::NoDefinedPoints: return "NoDefinedPoints";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Parse: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. what() is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace p4eval
