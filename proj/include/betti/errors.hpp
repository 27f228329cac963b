#pragma once

#include <stdexcept>
#include <string>

namespace betti {

enum class ErrorCode {
  NonFiniteValue,
  EmptyImage,
  ShapeMismatch,
  WrongDimension,
  IndexOutOfRange,
  IncompatibleGrids,
  NotComparable,
  NotBinary,
  MismatchedInputs,
  TooLarge,
  UnsupportedFormat,
  MalformedFile,
  NotTwoDimensional,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace betti
