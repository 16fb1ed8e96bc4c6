#pragma once

#include <stdexcept>
#include <string>

namespace birat {

// Input text (polynomials, documents, CLI values) that cannot be read.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition of the requested operation does not hold for this input
// (wrong shape, not homogeneous, not dominant, route inapplicable, ...).
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Three forms on P^2 whose syzygy module is not free of rank 2: the ideal
// is not saturated or its base scheme is not zero dimensional.
struct NotHilbertBurchError : HypothesisError {
  using HypothesisError::HypothesisError;
};

// Ambient / generator-count mismatch for an operation with a fixed shape.
struct WrongShapeError : HypothesisError {
  using HypothesisError::HypothesisError;
};

// A fit or verdict could not be pinned down at the requested sample bound /
// degree cap; raising --nmax or --cap-ydeg may resolve it.
struct UnstabilizedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two methods that must agree did not, or an internal invariant failed.
// Always indicates a bug or corrupted input, never a user error.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace birat
