#pragma once

#include <stdexcept>
#include <string>

namespace dagg {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct RankDeficient : Error {
  using Error::Error;
};

/// Right-hand side is not in the lattice generated by the columns of A;
/// the system has no integer solution at all.
struct InfeasibleByLattice : Error {
  using Error::Error;
};

struct NotPointed : Error {
  using Error::Error;
};

/// Requested construction needs more aggregated rows than the ambient
/// dimension admits (lineality dimension equals the number of rows of A).
struct UnsupportedRegime : Error {
  using Error::Error;
};

struct WitnessNotFound : Error {
  using Error::Error;
};

struct InfiniteCount : Error {
  using Error::Error;
};

struct InvalidCoefficients : Error {
  using Error::Error;
};

struct NonPositiveCoefficient : Error {
  using Error::Error;
};

struct DegreeOverflow : Error {
  using Error::Error;
};

struct WindowTooLarge : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace dagg
