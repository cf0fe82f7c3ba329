#pragma once

#include <exception>
#include <functional>

namespace casimir {

struct Integral {
    double value = 0.0;
    double absError = 0.0;
    bool converged = true;  // false when the subdivision limit stopped refinement
};

/// Globally adaptive Gauss-Kronrod (31-point) quadrature on [lo, hi].
/// Stops when absError <= max(epsAbs, epsRel |value|). Exceptions thrown by
/// the integrand propagate to the caller.
Integral integrateAdaptive(const std::function<double(double)>& f, double lo, double hi,
                           double epsAbs, double epsRel, int maxIntervals = 2000);

}  // namespace casimir
