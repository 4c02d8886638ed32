#pragma once

#include <stdexcept>
#include <string>

namespace rmtkit {

/// Bad input data or a violated precondition on it. CLI maps this to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration (config file or flag values). CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rmtkit
