#pragma once

#include <stdexcept>
#include <string>

namespace rbmlmc {

// Argument outside the mathematical domain of an operation (u <= 0 in a
// quantile, eps outside (0, 1/2), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Vector or matrix sizes that do not match the problem dimensions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A request that is well defined but too large to carry out exactly
// (enumeration caps, family capacity).
class FeasibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown preset names and other configuration mistakes.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace rbmlmc
