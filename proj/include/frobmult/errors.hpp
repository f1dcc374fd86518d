#pragma once

#include <stdexcept>
#include <string>

namespace frobmult {

/// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial strings, problem files, unknown names.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Algebraic preconditions that failed (ring mismatch, non-homogeneous input,
/// d∘d ≠ 0, singular systems, ...).
class AlgebraError : public Error {
public:
  using Error::Error;
};

class SingularSystemError : public AlgebraError {
public:
  using AlgebraError::AlgebraError;
};

/// The ring is outside what an operation supports (e.g. canonical module of a
/// non-Cohen–Macaulay quotient).
class UnsupportedRingError : public AlgebraError {
public:
  using AlgebraError::AlgebraError;
};

/// A multiplicity was requested for objects that violate its support
/// hypotheses (overlapping supports, dimension sum too large).
class HypothesisError : public Error {
public:
  using Error::Error;
};

} // namespace frobmult
