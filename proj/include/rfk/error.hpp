#pragma once

#include <stdexcept>
#include <string>

namespace rfk {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters supplied by the caller.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a formula is valid.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Base for numerical failures (surfaced by the CLI as exit status 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A tangential crossing or a projection with near-equal heights.
class NonGeneric : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Collinear or touching segments in a polyline scan.
class Degenerate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DiagonalSingularity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NegativeDeterminant : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientPrimes : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Unreadable input or unwritable output (exit status 4 in the CLI).
class IoError : public Error {
 public:
  using Error::Error;
};

/// Gauss code that does not describe a single-component knot diagram.
class InvalidDiagram : public Error {
 public:
  using Error::Error;
};

}  // namespace rfk
