#pragma once

#include <stdexcept>
#include <string>

namespace offt {

/// Argument outside the mathematical domain of an operation (negative delay,
/// kappa outside [0,1], N not a power of two, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or unknown configuration content.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A named entity (sweep, element locator, port) does not exist.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The inputs admit no meaningful answer (all-zero response, threshold
/// already violated at the design point, ...).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace offt
