#pragma once

#include <stdexcept>
#include <string>

namespace skein {

/// Bad user input. line/column are 1-based; 0 means unknown.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line == 0) return what;
    std::string loc = "line " + std::to_string(line);
    if (column > 0) loc += ", column " + std::to_string(column);
    return loc + ": " + what;
  }
  int line_;
  int column_;
};

/// Text that does not follow the grammar.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// Structurally invalid diagram: dangling edge, odd endpoint count, non-planar, ...
class DiagramError : public InputError {
 public:
  using InputError::InputError;
};

/// Two independent computations disagree.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace skein
