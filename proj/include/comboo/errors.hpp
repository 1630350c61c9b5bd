#pragma once

#include <stdexcept>
#include <string>

namespace comboo {

/// Bad arguments to a library operation (dimension mismatch, empty inputs, ...).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (e.g. kernel matrix not factorizable after jitter escalation).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace comboo
