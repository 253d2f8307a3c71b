#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bvass {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input document. Positions are 1-based.
class ParseError : public Error {
public:
  ParseError(std::string message, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// A configured cap (grid cells, fixpoint rounds, node counts, ...) was exceeded.
class ResourceLimitError : public Error {
public:
  explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

/// Exact 64-bit arithmetic would wrap around. Results are never silently truncated.
class ArithmeticOverflowError : public Error {
public:
  explicit ArithmeticOverflowError(const std::string& what) : Error(what) {}
};

}  // namespace bvass
