#pragma once

#include <stdexcept>
#include <string>

namespace cxta {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in cyclotomic fields of incompatible levels.
struct LevelMismatch : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

/// A sign was requested for an element that is not fixed by complex conjugation.
struct NotReal : Error {
    using Error::Error;
};

/// The shape does not span a complex hyperbolic triangle (signature is not (2,1)).
struct DegenerateTriangle : Error {
    using Error::Error;
};

/// Exact processing needs a rational angular invariant.
struct IrrationalPsi : Error {
    using Error::Error;
};

/// Triangle angles π/p, π/q, π/r with 1/p + 1/q + 1/r >= 1.
struct NotHyperbolic : Error {
    using Error::Error;
};

/// Malformed textual or JSON input.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace cxta
