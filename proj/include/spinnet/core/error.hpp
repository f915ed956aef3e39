#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinnet {

enum class ErrorCode {
  NotAFreeEnd,
  InadmissibleJoin,
  InadmissibleTriple,
  InadmissibleSplit,
  HasFreeEnds,
  InvalidNetwork,
  InvalidPartition,
  ZeroNorm,
  TooLarge,
  MalformedArguments,
  OutOfRange,
  TooFewEnds,
  ExhaustedEnd,
  BadIndices,
  ZeroProbability,
  BudgetExceeded,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every spinnet operation. The code is stable and is
/// what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinnet
