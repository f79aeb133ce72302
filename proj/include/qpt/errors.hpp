#pragma once

#include <stdexcept>
#include <string>

namespace qpt {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: files, JSON schemas, command-line values.
struct parse_error : error {
  using error::error;
};

// A mathematical precondition does not hold (dimension mismatch,
// non-Hermitian input, broken trace preservation, ...).
struct invariant_error : error {
  using error::error;
};

// A computation is valid but numerically unusable (singular matrix,
// non-convergent eigensolver, overflow).
struct numerical_error : error {
  using error::error;
};

// Principal matrix logarithm undefined: eigenvalue on the negative real axis.
struct branch_cut_error : numerical_error {
  using numerical_error::numerical_error;
};

}  // namespace qpt
