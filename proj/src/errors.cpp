#include "betti/errors.hpp"

namespace betti {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IncompatibleGrids: return "IncompatibleGrids";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::MismatchedInputs: return "MismatchedInputs";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace betti
