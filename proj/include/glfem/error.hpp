#pragma once

#include <stdexcept>
#include <string>

namespace glfem {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An entity id (vertex, edge, triangle, dof) outside the valid range.
class IdOutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// A parameter violates its documented range (sigma <= 0, theta outside (0,1], ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Fields, spaces or operators that do not belong together.
class SpaceMismatchError : public Error {
 public:
  using Error::Error;
};

/// A user supplied function returned a non-finite value.
class DataEvaluationError : public Error {
 public:
  using Error::Error;
};

/// Prolongation between meshes that are not parent and child.
class NestingError : public Error {
 public:
  using Error::Error;
};

/// Derived data (estimator, indicators) computed for a different mesh.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The sparse factorization failed.
class SolverFailureError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace glfem
