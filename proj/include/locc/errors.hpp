#pragma once

#include <stdexcept>
#include <string>

namespace locc {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or invalid subsystem dimensions, duplicate targets.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its mathematical domain (unnormalized state, p outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A state would exceed the configured amplitude cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A party touched a register owned by the other party.
class LocalityViolation : public Error {
 public:
  using Error::Error;
};

/// Registers to discard are still entangled with the rest of the system.
class NotProduct : public Error {
 public:
  using Error::Error;
};

/// Exhaustive evaluation found more outcome paths than allowed.
class BranchLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The typicality window admits no string.
class EmptyTypicalSet : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration. `line` is 0 when no source position is known.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace locc
