#pragma once

#include <stdexcept>
#include <string>

namespace tauq {

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix/morphism shapes.
struct shape_error : error {
  using error::error;
};

/// Malformed input (bad relation, unknown vertex, unlabeled injective, ...).
struct input_error : error {
  using error::error;
};

/// A computation needed totality the algebra could not certify within its
/// caps (rewrite completion or basis saturation hit the bound, or a
/// certificate's validity region was left, e.g. a too-small prime field).
struct undecided_error : error {
  using error::error;
};

/// A mathematically guaranteed invariant failed; always a bug, surfaced loudly.
struct internal_error : error {
  using error::error;
};

/// Parse failure with source position.
struct parse_error : error {
  int line;
  int column;
  parse_error(const std::string& msg, int line_, int column_)
      : error(msg + " at line " + std::to_string(line_) + ", column " +
              std::to_string(column_)),
        line(line_),
        column(column_) {}
};

}  // namespace tauq
