#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace umeb {

enum class ErrorCode {
  NotPrime,
  WrongResidueClass,
  OutOfRange,
  BadResidueClass,
  UnsupportedOrder,
  InvalidHadamard,
  ShapeMismatch,
  NotSquare,
  RankOutOfRange,
  IndexOutOfRange,
  HadamardOrderMismatch,
  NotOrthogonal,
  Infeasible,
  NotCertified,
  UsageError,
  IoError,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for all library failures; `code()` names the
/// violated precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace umeb
