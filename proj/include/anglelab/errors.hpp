#pragma once

#include <stdexcept>
#include <string>

namespace anglelab {

/// Base class for all anglelab errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A generator or operation was called with parameters outside its domain.
struct InvalidParameter : Error {
    using Error::Error;
};

/// Malformed caller-supplied data (out-of-range indices, bad subsets).
struct InvalidInput : Error {
    using Error::Error;
};

/// An angle at or too close to 0 or pi (collinear or coincident points).
struct DegenerateAngle : Error {
    using Error::Error;
};

/// A collinear triple encountered while a census runs in strict mode.
struct DegenerateTriple : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

/// An enumeration would exceed the configured cap.
struct TooLarge : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// A seeded retry loop ran out of attempts; the message carries the last failure.
struct RetriesExhausted : Error {
    using Error::Error;
};

/// The point set admits no difference-equal quadruple to test.
struct NoQuadruplesFound : Error {
    using Error::Error;
};

/// Equivalent index triples produced angles further apart than the tolerance.
/// Signals a precision problem, not a combinatorial one.
struct WitnessDiscrepancyTooLarge : Error {
    using Error::Error;
};

/// Unreadable or malformed input file.
struct IoError : Error {
    using Error::Error;
};

}  // namespace anglelab
