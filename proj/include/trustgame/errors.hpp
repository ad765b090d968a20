#pragma once

#include <stdexcept>
#include <string>

namespace trustgame {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text failed to parse or violated a graph invariant. `line` is
// 1-based for edge-list input, 0 when no line information applies.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

// An exhaustive operation was requested above its player-count guard.
// Guards refuse explicitly; nothing is silently truncated or sampled.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace trustgame
