#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Grid/length mismatch between two spectral objects.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Scenario configuration failed validation. Carries the offending fields.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Closed-loop time-domain simulation diverged.
class InstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested optimization target cannot be met by any power.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sqz
