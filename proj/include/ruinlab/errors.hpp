#pragma once

#include <stdexcept>
#include <string>

namespace ruinlab {

// Raised when a GameConfig or WalkSpec violates its invariants. The message
// always names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation applied to a state it is not defined on (e.g. stepping a game
// with nobody alive).
class InvalidStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Linear solve failed or produced a residual above tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ruinlab
