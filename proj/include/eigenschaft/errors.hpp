#pragma once

#include <stdexcept>
#include <string>

namespace eigenschaft {

// Every failure the library reports derives from Error. The C API maps each
// subclass to its own status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input violates a mathematical precondition (not Hermitian, not a density
// matrix, not an involution, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative routine failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A closed-form constructor was handed infeasible parameters. The message
// names the violated relation.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Fringe inversion could not produce a physical answer.
class FitError : public Error {
 public:
  using Error::Error;
};

// Simulation configuration is unusable.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace eigenschaft
