#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specflow {

// Parameter/domain violations reuse std::invalid_argument / std::domain_error.
// The types below exist where callers need to distinguish failure modes
// (CLI exit codes, resolution diagnostics naming a step index).

struct SpaceMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ContainmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedNormError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Sampling too coarse for an operation that must chain consecutive samples
// (phase unwrapping, separation cuts, contraction steps).
struct ResolutionError : std::runtime_error {
    std::size_t step_index;
    ResolutionError(const std::string& msg, std::size_t step)
        : std::runtime_error(msg + " (step " + std::to_string(step) + ")"),
          step_index(step) {}
};

// A tie that the declared rules cannot break (equidistant boundary points,
// theta colliding with an endpoint eigenvalue angle).
struct AmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Winding residual too large after rounding to the nearest integer.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NormalityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace specflow
