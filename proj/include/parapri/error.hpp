#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace parapri {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `offset` is the byte offset into the text that was
/// being parsed; `line` is 1-based when the input is line oriented (0 if not).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0)
      : Error(format(what, offset, line)), offset_(offset), line_(line) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& what, std::size_t offset, std::size_t line) {
    std::string msg = what + " at byte " + std::to_string(offset);
    if (line != 0) msg += " (line " + std::to_string(line) + ")";
    return msg;
  }

  std::size_t offset_;
  std::size_t line_;
};

/// Well-formed input that violates a structural invariant
/// (duplicate label, undeclared index, atom outside the universe, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The priority relation contains a cycle.
class CycleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A logic program has a cycle through negation. `witness` lists the atoms
/// of one such cycle, starting and ending with the same atom.
class NotStratifiedError : public ValidationError {
 public:
  NotStratifiedError(const std::string& what, std::vector<std::string> witness)
      : ValidationError(what), witness_(std::move(witness)) {}

  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

/// A brute-force cap (atoms, formulas, members) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace parapri
