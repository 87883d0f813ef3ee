#pragma once

#include <stdexcept>
#include <string>

namespace levar {

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: bad atoms, bad Λ specification, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numeric precondition was violated (level outside [0,1], p < 1,
/// Λ attaining 1 where the closed form requires Λ < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A solver produced results that fail its own consistency checks.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace levar
