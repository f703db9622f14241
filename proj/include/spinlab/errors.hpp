#pragma once

#include <stdexcept>
#include <string>

namespace spinlab {

// Invalid arguments: out-of-range occupations, non-unit directions,
// dimension mismatches, malformed probability vectors.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure, e.g. a solver that did not converge. Carries the
// residual at the point of failure.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace spinlab
