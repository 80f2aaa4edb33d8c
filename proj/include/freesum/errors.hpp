#pragma once

#include <stdexcept>
#include <string>

namespace freesum {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element lies outside the monoid/lattice it was claimed to belong to.
struct MembershipError : Error {
  using Error::Error;
};

/// A quotient that must be torsionfree is not.
struct TorsionError : Error {
  using Error::Error;
};

/// Input outside the supported class (non-pointed cone, units, no positive
/// grading, unsupported combination of options).
struct UnsupportedError : Error {
  using Error::Error;
};

/// Instance exceeds desk-scale bounds; computation refused, never wrong.
struct ResourceError : Error {
  using Error::Error;
};

/// A named structural precondition failed (free-sum conditions, face
/// identity, degenerate input).
struct StructuralError : Error {
  using Error::Error;
};

/// A support form was evaluated at a point on the negative side.
struct NegativeHeightError : Error {
  using Error::Error;
};

/// Truncated/rational series mismatch: wrong variable count, truncation too
/// short, or the data is not rational with the claimed denominator.
struct SeriesError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace freesum
