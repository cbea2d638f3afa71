#pragma once

#include <stdexcept>
#include <string>

namespace dce {

/// Invalid user input: bad geometry, bad mode indices, malformed config.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical routine left its validated domain (divergent series,
/// symplectic defect past bound, unphysical covariance).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failures during emission.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dce
