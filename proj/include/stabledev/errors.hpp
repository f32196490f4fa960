#pragma once

#include <stdexcept>
#include <string>

namespace stabledev {

// Invalid parameters: out-of-domain inputs, violated preconditions.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A bound that the underlying result does not cover (for example the
// median small-deviation bound for alpha <= 1).
class UnsupportedRegime : public DomainError {
public:
    using DomainError::DomainError;
};

// A solver or quadrature that failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Monte Carlo estimate too noisy for the requested use.
class MonteCarloBudgetError : public std::runtime_error {
public:
    MonteCarloBudgetError(const std::string& what, double achieved_relative_ci);
    double achieved_relative_ci() const { return achieved_relative_ci_; }

private:
    double achieved_relative_ci_;
};

void require(bool condition, const std::string& message);

}  // namespace stabledev
