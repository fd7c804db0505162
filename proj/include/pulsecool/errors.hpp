#pragma once

#include <stdexcept>
#include <string>

namespace pulsecool {

/// Input violates a documented invariant (bad parameter, malformed config).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integration or analysis failed on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite state produced by the integrator.
class NonFiniteError : public NumericalError {
public:
    NonFiniteError(const std::string& what, double t) : NumericalError(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace pulsecool
