#pragma once

#include <stdexcept>
#include <string>

namespace bcr {

// Unknown variable name, or a variable required by an evaluator is missing.
struct NameError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed arguments: overlapping variable sets, empty keep-lists, bad directions.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Factor chain cannot be composed (dangling conditioning variable, duplicate output,
// cardinality mismatch).
struct CompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense table or enumeration would exceed its configured cap.
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on the distribution does not hold (e.g. Markov chain violated).
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric data fails validation (negative mass, unnormalized slices).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bcr
