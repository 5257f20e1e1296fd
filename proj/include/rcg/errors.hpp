#pragma once

#include <stdexcept>
#include <string>

namespace rcg {

/// Evaluation outside a function's declared radial domain (0, T].
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or ODE integration did not reach the requested tolerance.
/// Carries the last estimate so callers can inspect how far it got.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double last)
        : std::runtime_error(what), last_estimate(last) {}
    double last_estimate;
};

/// A theorem hypothesis does not hold: curvature ordering, residual sign,
/// kappa ordering, or a parameter outside its admissible range.
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

/// Seed selection for the singular initial value problem failed; the
/// coefficient is unbounded and non-integrable near 0 and no hint was given.
class seed_error : public std::runtime_error {
public:
    explicit seed_error(const std::string& what) : std::runtime_error(what) {}
};

/// A domain was handed to an operation that only supports radial graphs.
class unsupported_domain_error : public std::runtime_error {
public:
    explicit unsupported_domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rcg
