#pragma once

#include <stdexcept>
#include <string>

namespace vinesim {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries 1-based line/column when known (0 = unknown).
class InputFormatError : public Error {
 public:
  InputFormatError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(locate(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string locate(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string msg = "line " + std::to_string(line);
    if (column != 0) msg += ", column " + std::to_string(column);
    return msg + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation called with an agent that cannot perform it.
class MisuseError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace vinesim
