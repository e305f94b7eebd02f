#pragma once

#include <stdexcept>
#include <string>

namespace loadstab {

/// Malformed or inconsistent input data (files, tables, series).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration: missing columns, invalid parameters, unknown keys.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A gap in the load data that the cleaning policy cannot fill.
class UnrecoverableGapError : public InputError {
public:
    using InputError::InputError;
};

}  // namespace loadstab
