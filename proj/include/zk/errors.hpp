#ifndef ZK_ERRORS_HPP
#define ZK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zk {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live on different grids or have mismatched sizes.
struct DimensionError : Error {
    using Error::Error;
};

// An operation required a vanishing zero mode (or zero-mean data) and did not get one.
struct ZeroModeError : Error {
    using Error::Error;
};

// Parameter outside the admissible range of a formula (regularity thresholds etc.).
struct DomainError : Error {
    using Error::Error;
};

// A requested run does not fit the configured grid or resource budget.
struct CapacityError : Error {
    using Error::Error;
};

// Fixed-point iteration failed to contract within the iteration budget.
struct NonContractionError : Error {
    double last_factor;
    NonContractionError(const std::string& msg, double factor)
        : Error(msg), last_factor(factor) {}
};

// A computed quantity came out NaN/Inf or otherwise unusable.
struct NumericalError : Error {
    using Error::Error;
};

// Degenerate input where a ratio or fit is undefined (zero denominator and so on).
struct DegenerateInputError : Error {
    using Error::Error;
};

// Bad configuration file, unknown key, missing required key, unparsable value.
struct ConfigError : Error {
    using Error::Error;
};

// File I/O and format failures.
struct IoError : Error {
    using Error::Error;
};

} // namespace zk

#endif
