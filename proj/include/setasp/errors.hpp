#pragma once

#include <stdexcept>
#include <string>

namespace setasp {

/// Bad input program or configuration; the CLI maps it to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& msg)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A finitization bound would be exceeded (combinatorial explosion guard).
class BoundsError : public InputError {
 public:
  BoundsError(const std::string& bound, const std::string& msg)
      : InputError(msg + " (bound: " + bound + ")"), bound_(bound) {}
  const std::string& bound() const { return bound_; }

 private:
  std::string bound_;
};

}  // namespace setasp
