#pragma once

#include <stdexcept>
#include <string>

namespace pwlnet {

/// Bad input data or a violated precondition (exit code 1 territory).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A target exceeds what the requested architecture can represent.
class CapacityError : public ValidationError {
public:
    explicit CapacityError(const std::string& msg) : ValidationError(msg) {}
};

/// File or serialization failure (exit code 2 territory).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pwlnet
