#ifndef WALKSPECTRA_ERRORS_HPP
#define WALKSPECTRA_ERRORS_HPP

#include <stdexcept>

namespace walkspectra {

/// Coin matrices, lattice points or states disagree on d or D.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally invalid operator definition.
class MalformedOperator : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Laurent evaluation at a point with a zero coordinate.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An operation's numerical precondition does not hold (non-unitary input,
/// missing eigenvalue, spectral gap too small, ...).
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A torus grid is too small to represent a lattice region without wrap-around.
class AliasingError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

class EigensolverFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace walkspectra

#endif  // WALKSPECTRA_ERRORS_HPP
