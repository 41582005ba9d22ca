#pragma once

#include <stdexcept>
#include <string>

namespace omega {

// Base for every error raised by the library. The CLI maps the concrete
// types onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition was violated (argument outside a branch
// domain, zero scale, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An expression would divide by a vanishing W value or a vanishing factor.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// An iteration hit its cap without meeting its stopping rule.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Per-bracket failure of a root polish.
class NoConvergenceError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// A searched-for quantity (separation parameter, root) does not exist on
// the scanned range.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

// A root of the pole-cleared residual sits on a real zero of the
// denominator polynomial.
class PoleCollisionError : public Error {
 public:
  using Error::Error;
};

}  // namespace omega
