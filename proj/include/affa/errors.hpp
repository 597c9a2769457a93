#ifndef AFFA_ERRORS_HPP
#define AFFA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace affa {

// Violated precondition or type invariant (bad dimensions, bad flags, ...).
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed automaton file. `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A working register exceeded the instrumented width bound. This signals an
// implementation bug in the residue pipeline, not an input error.
class SpaceBoundViolation : public std::logic_error {
 public:
  explicit SpaceBoundViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace affa

#endif
