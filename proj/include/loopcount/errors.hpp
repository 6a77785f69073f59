#pragma once
#include <stdexcept>
#include <string>

namespace loopcount {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration formula was asked to evaluate at a parity it does not cover
// (e.g. G_2 with odd degree sum).  Distinct from "the count is zero".
struct ParityError : Error {
    explicit ParityError(const std::string& msg) : Error(msg) {}
};

// Density at the boundary of a formula's domain (d = 0, d = n, lambda in {0,1}).
struct DensityError : Error {
    explicit DensityError(const std::string& msg) : Error(msg) {}
};

// A parameter vector entry left its admissible range (e.g. p' outside [0,1]).
struct RangeError : Error {
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

// The memo table exceeded its configured entry cap; the instance is too large.
struct ResourceLimitError : Error {
    explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

// A distribution was requested over an empty class (total count zero).
struct EmptyClassError : Error {
    explicit EmptyClassError(const std::string& msg) : Error(msg) {}
};

// An identity hypothesis is violated (e.g. some p_j = 1/2 in the parity split).
struct HypothesisError : Error {
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

}  // namespace loopcount
