#pragma once

#include <stdexcept>
#include <string>

namespace gencx {

/// How a failure should be classified by callers (the CLI maps these to exit codes).
enum class ErrorKind {
  Input,      ///< malformed input or violated precondition
  Falsified,  ///< the input is well formed but the mathematical claim fails
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ErrorKind kind = ErrorKind::Input)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax or semantic error in a model document, with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(format(msg, line, column)), message_(msg), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
  }

  std::string message_;
  int line_;
  int column_;
};

}  // namespace gencx
