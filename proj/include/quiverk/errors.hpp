#pragma once

#include <stdexcept>
#include <string>

namespace quiverk {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension or argument mismatch (non-square input, index out of range, ...).
struct DimensionError : Error {
    using Error::Error;
};

// det F = 0 or det G = 0.
struct SingularInputError : Error {
    using Error::Error;
};

// The exact rational solve for C_k produced a non-integer entry.
struct NonIntegralError : Error {
    using Error::Error;
};

// binomial(d, d/2) exceeds the configured bound.
struct CapacityError : Error {
    using Error::Error;
};

// 1 is an eigenvalue of G where the d=2 closed form forbids it.
struct EigenvalueOneError : Error {
    using Error::Error;
};

// A monomial matrix operation would leave the generalized-permutation class.
struct StructureError : Error {
    using Error::Error;
};

// Malformed job text.
struct ParseError : Error {
    using Error::Error;
};

// Non-diagonal F without the explicit opt-in.
struct GeneralFRequiredError : Error {
    using Error::Error;
};

}  // namespace quiverk
