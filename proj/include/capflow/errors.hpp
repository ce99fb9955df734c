#pragma once

#include <stdexcept>

namespace capflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad data handed to a constructor, parser or validator.
struct InputError : Error {
  using Error::Error;
};

// Failure while iterating a solver.
struct SolverError : Error {
  using Error::Error;
};

struct NegativeEntryError : InputError {
  using InputError::InputError;
};
struct NotNormalizedError : InputError {
  using InputError::InputError;
};
struct DimensionMismatchError : InputError {
  using InputError::InputError;
};
struct NegativeProbabilityError : InputError {
  using InputError::InputError;
};
struct RowNotStochasticError : InputError {
  using InputError::InputError;
};
struct DeadOutputColumnError : InputError {
  using InputError::InputError;
};
struct NotSymmetricError : InputError {
  using InputError::InputError;
};

// Every coordinate clamped to zero, nothing left to normalize.
struct AllZeroError : SolverError {
  using SolverError::SolverError;
};
// An output probability vanished where a logarithm is required.
struct BoundarySingularityError : SolverError {
  using SolverError::SolverError;
};
// Non-finite iterate (classic Euler mode only).
struct BlowUpError : SolverError {
  using SolverError::SolverError;
};

}  // namespace capflow
