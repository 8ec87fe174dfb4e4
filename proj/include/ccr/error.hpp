#pragma once

#include <stdexcept>

namespace ccr {

// Malformed or invalid scenario configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A numerical routine failed to reach its tolerance.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ccr
