#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// An input lies outside the domain where a formula or model is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Tabulated data was queried outside of its range.
class ExtrapolationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A series or quadrature did not reach its tolerance within the configured
/// caps. The best available (partial) value is carried along.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partialValue)
        : std::runtime_error(what), partial_(partialValue) {}

    double partialValue() const noexcept { return partial_; }

private:
    double partial_;
};

}  // namespace casimir
