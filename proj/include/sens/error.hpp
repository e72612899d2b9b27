#pragma once

#include <stdexcept>
#include <string>

namespace sens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inversion of zero in the field.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Field or transform capacity is insufficient for the requested operation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An algebraic invariant failed (non-exact division, broken chain identity,
/// degree bound exceeded). Always indicates a bug or a corrupted state.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// An exact polynomial division left a non-zero remainder.
class DivisibilityError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

/// A kernel basis did not have the expected dimension.
class RankDegeneracy : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

/// A matrix that must be non-singular has zero determinant. For random
/// graph encodings this is a Monte Carlo failure: rebuild with a new seed.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or invalid graph/update description.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sens
