#pragma once

#include <stdexcept>
#include <string>

namespace galent {

// Caller-side contract violations: bad arguments, malformed specs, caps.
// The CLI maps these to exit status 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap was exceeded. Carries the order that tripped it.
class CapExceeded : public PreconditionError {
 public:
  CapExceeded(const std::string& what_arg, std::size_t order)
      : PreconditionError(what_arg), order_(order) {}
  std::size_t order() const noexcept { return order_; }

 private:
  std::size_t order_;
};

// Malformed group specification; `path` is a JSON pointer into the input.
class SpecError : public PreconditionError {
 public:
  SpecError(const std::string& path, const std::string& message)
      : PreconditionError(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace galent
