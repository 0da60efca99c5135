#pragma once

#include <stdexcept>
#include <string>

namespace focgnn {

// Base for every error the library raises. kind() is a stable machine tag
// used by the CLI when printing structured errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation_error"; }
};

class FormatError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "format_error"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  const char* kind() const noexcept override { return "parse_error"; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class CompileError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "compile_error"; }
};

class OverflowError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "overflow"; }
};

}  // namespace focgnn
