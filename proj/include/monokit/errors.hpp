#pragma once

#include <stdexcept>
#include <string>

namespace monokit {

/// Bad user input: malformed spec files, out-of-range parameters.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Query at a point outside the operator domain.
class OutOfDomainError : public std::domain_error {
public:
    explicit OutOfDomainError(const std::string& what) : std::domain_error(what) {}
};

/// Iterative solve hit its iteration cap; carries the last residual.
class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(const std::string& what, double last_residual, int iterations)
        : std::runtime_error(what), last_residual(last_residual), iterations(iterations) {}
    double last_residual;
    int iterations;
};

/// Degree computation found the target value on (or too close to) the boundary.
class BoundaryDegeneracyError : public std::runtime_error {
public:
    explicit BoundaryDegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Regular-value degree sum hit a zero with a (numerically) singular Jacobian.
class DegenerateZeroError : public std::runtime_error {
public:
    explicit DegenerateZeroError(const std::string& what) : std::runtime_error(what) {}
};

/// Degree certificates differ but the multistart search found no candidate.
class SearchFailureError : public std::runtime_error {
public:
    explicit SearchFailureError(const std::string& what) : std::runtime_error(what) {}
};

/// Interval multifunction with lower bound above the upper bound.
class MalformedMultifunctionError : public std::runtime_error {
public:
    explicit MalformedMultifunctionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace monokit
