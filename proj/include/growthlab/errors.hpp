#pragma once

#include <stdexcept>
#include <string>

namespace growthlab {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error { using Error::Error; };
struct NoIrreducibleError : Error { using Error::Error; };
struct DivisionByZeroError : Error { using Error::Error; };
struct FieldMismatchError : Error { using Error::Error; };
struct SpecMismatchError : Error { using Error::Error; };
struct NotInvertibleError : Error { using Error::Error; };
struct UnsupportedSpecError : Error { using Error::Error; };
struct UnsupportedRingError : Error { using Error::Error; };
struct TooLargeError : Error { using Error::Error; };
struct MemoryCapError : Error { using Error::Error; };
struct NotSymmetricError : Error { using Error::Error; };
struct NotConvergedError : Error { using Error::Error; };
struct NotGeneratingError : Error { using Error::Error; };
struct NotRegularSemisimpleError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct DeterminantNotOneError : Error { using Error::Error; };
struct InvariantViolationError : Error { using Error::Error; };

/// Parse failure with 1-based source position.
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

}  // namespace growthlab
