#pragma once

#include <stdexcept>
#include <string>

namespace soniq {

// Base for every error raised by the library. The CLI maps these to exit
// code 2 (bad input) and anything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested size exceeds what a routine supports (qubit cap, oracle cap).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Length/dimension mismatch or a length that must be a power of two.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A window that normalizes to the zero vector.
class DegenerateWindowError : public Error {
 public:
  using Error::Error;
};

// Invalid argument values (equal qubit indices, negative index, bad ranges).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries the 1-based line and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " (row " + std::to_string(line) +
                              (column == 0 ? "" : ", column " + std::to_string(column)) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Filesystem failures (unreadable input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace soniq
