#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posprop {

enum class ErrorCode {
  Syntax,
  MissingAtom,
  SchemeNotInCalculus,
  FragmentViolation,
  CalculusMismatch,
  InsufficientCalculus,
  NotAHypothesis,
  OpenHypotheses,
  ArityMismatch,
  Precondition,
  InvalidPath,
  MissingPartition,
  LeafMismatch,
  UncheckedInput,
};

const char* to_string(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t column, std::string expected, const std::string& what)
      : Error(ErrorCode::Syntax, what), column_(column), expected_(std::move(expected)) {}

  /// 1-based column (or line, for proof files) of the offending token.
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t column_;
  std::string expected_;
};

}  // namespace posprop
