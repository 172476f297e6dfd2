#pragma once

#include <stdexcept>
#include <string>

namespace coopemit {

// Input violates a type invariant (non-Hermitian couplings, bad geometry, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested problem exceeds the configured size cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive integration failed; carries the simulation time of the failure.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double time)
        : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace coopemit
