#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetcheck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression or problem-file syntax error; position is a byte offset into
/// the offending text (or a line number for file-level errors).
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

struct UnknownIdentifierError : Error {
  UnknownIdentifierError(const std::string& ident, std::size_t position)
      : Error("unknown identifier '" + ident + "' (at position " +
              std::to_string(position) + ")"),
        identifier(ident),
        position(position) {}
  std::string identifier;
  std::size_t position;
};

/// Evaluation hit a vanishing denominator (or atan2 at the origin).
struct SingularPointError : Error {
  using Error::Error;
};

/// Every sampling attempt landed on a singular locus.
struct DegenerateSamplingError : Error {
  using Error::Error;
};

/// The candidate dynamics fail the generic-rank condition on df/du.
struct NotAControlSystemError : Error {
  using Error::Error;
};

/// Dynamically equivalent systems must carry the same number of controls.
struct ControlCountMismatchError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct InvariantViolationError : Error {
  using Error::Error;
};

struct FileFormatError : Error {
  FileFormatError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  std::size_t line;
};

}  // namespace jetcheck
