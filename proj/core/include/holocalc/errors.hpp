#pragma once

#include <stdexcept>
#include <string>

namespace holocalc {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shapes of two objects do not match (vector/matrix/calibration dimension).
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A documented precondition of an operation is violated.
class PreconditionError : public Error {
public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// A linear system is singular to working precision.
class SingularError : public Error {
public:
  explicit SingularError(const std::string& what) : Error(what) {}
};

/// An iteration failed to converge within its configured budget.
class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/// Malformed or schema-violating JSON input.
class JsonError : public Error {
public:
  explicit JsonError(const std::string& what) : Error(what) {}
};

}  // namespace holocalc
