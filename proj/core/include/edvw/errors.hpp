#pragma once

#include <stdexcept>
#include <string>

namespace edvw {

// Root of the library's exception hierarchy. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation (bad id, wrong length,
// empty/full vertex set).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but degenerate for the operation (e.g. constant vector).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A structural precondition does not hold (e.g. disconnected graph).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedReductionError : public Error {
 public:
  using Error::Error;
};

// File could not be read/written or is malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public IoError {
 public:
  using IoError::IoError;
};

// Iterative solver failed to reach its contract.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace edvw
