#pragma once

#include <stdexcept>

namespace ddqsl {

// Bad argument values: non-finite numbers, violated parameter ranges,
// malformed states.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested outside the mathematical domain of an operation
// (e.g. a time outside the driving window).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Request exceeds a hard resource guard (e.g. dense evolution of too many
// qubits).
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

// The speed-limit expression is 0/0 because the final state equals the
// initial state (final population = 1 to machine accuracy).
struct DegenerateTargetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A file could not be opened, read, or written; the message names the path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ddqsl
