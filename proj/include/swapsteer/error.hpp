#pragma once

#include <stdexcept>
#include <string>

namespace swapsteer {

/// Failure categories. The CLI maps each one onto a fixed exit code.
enum class ErrorKind {
  kParse,         // unreadable or malformed input file
  kValidation,    // input parsed but violates a type invariant
  kPrecondition,  // valid input that the operation cannot accept
  kDimension,     // inconsistent subsystem dimensions
  kResource,      // refused because of a cost guard
  kNumerical,     // iteration failed to converge
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace swapsteer
