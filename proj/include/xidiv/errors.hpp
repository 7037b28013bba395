#pragma once

#include <stdexcept>
#include <string>

namespace xidiv {

// Base for every error raised by the library. Callers that only care about
// success/failure catch this; the CLI maps the concrete types to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract arguments (empty grids, inverted ranges, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Argument outside the region where the evaluated transform converges.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a pole of Gamma or zeta.
class PoleError : public Error {
 public:
  using Error::Error;
};

// A denominator on the integration path vanishes.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Intermediate quantity overflows binary64.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Non-finite sample or failed numerical procedure.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace xidiv
