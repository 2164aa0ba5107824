// errors.hpp: exception types thrown by the core library.

#pragma once

#include <stdexcept>
#include <string>

namespace tavis {

// Raw adiabatic frame requested exactly at the tau = 0 degeneracy, or an
// adiabaticity ratio requested for a degenerate pair.
class DegeneratePointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Asymptotic formula evaluated outside its validity window.
class OutOfDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ODE integration could not meet the requested tolerance.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double tau_reached, double last_step)
        : std::runtime_error(what), tau_reached_(tau_reached), last_step_(last_step) {}

    double tau_reached() const noexcept { return tau_reached_; }
    double last_step() const noexcept { return last_step_; }

private:
    double tau_reached_;
    double last_step_;
};

}  // namespace tavis
