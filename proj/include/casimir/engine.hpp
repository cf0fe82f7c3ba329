#pragma once

#include <string>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/geometry.hpp"

namespace casimir {

/// Truncation and accuracy controls for Matsubara sums, n-series and the
/// semi-infinite v integrals.
struct QuadratureSpec {
    double relTol = 1e-8;   // target relative accuracy of the final result
    long lMax = 100000;     // Matsubara cap
    long nMax = 10000000;   // explicit n-series cap (oracles, oscillator kernel)
    double vSpan = 80.0;    // v integrals run over [zeta_l, zeta_l + vSpan]
    long nDirect = 256;     // explicit n terms before the analytic tail (static oscillator term)

    void validate() const;
};

enum class SumMode { FiniteT, ZeroT };

std::string toString(SumMode m);

struct ForceResult {
    double value = 0.0;        // N for forces, N/m for gradients
    double estAbsError = 0.0;  // quadrature + truncation estimate, same unit
    long termsUsed = 0;        // Matsubara terms (or zeta nodes at T = 0)
    SumMode mode = SumMode::FiniteT;
    std::vector<std::string> warnings;  // PFA validity diagnostics
};

struct RotationFactor {
    double G = 1.0;  // (B/H)^{3/2}
    double H = 0.0;  // sqrt(A^2 sin^2 phi + B^2 cos^2 phi), m
};

RotationFactor rotationFactor(double A, double B, double phi);

// Lifshitz-type PFA force and gradient. T == 0 in the environment switches to
// the continuous-frequency integral.

ForceResult casimirForce(const LensGeometry& geom, const Environment& env,
                         const PermittivityModel& mat, const QuadratureSpec& q = {});
ForceResult casimirGradient(const LensGeometry& geom, const Environment& env,
                            const PermittivityModel& mat, const QuadratureSpec& q = {});

ForceResult zeroTemperatureForce(const LensGeometry& geom, double a, const PermittivityModel& mat,
                                 const QuadratureSpec& q = {});
ForceResult zeroTemperatureGradient(const LensGeometry& geom, double a,
                                    const PermittivityModel& mat, const QuadratureSpec& q = {});

ForceResult twoHalvesForce(const LensGeometry& geom, const Environment& env,
                           const PermittivityModel& mat, const QuadratureSpec& q = {});
ForceResult twoHalvesGradient(const LensGeometry& geom, const Environment& env,
                              const PermittivityModel& mat, const QuadratureSpec& q = {});

ForceResult rotatedForce(const LensGeometry& geom, const Environment& env,
                         const PermittivityModel& mat, const QuadratureSpec& q = {});
ForceResult rotatedGradient(const LensGeometry& geom, const Environment& env,
                            const PermittivityModel& mat, const QuadratureSpec& q = {});

/// Dispatches on geom.variant.
ForceResult lensForce(const LensGeometry& geom, const Environment& env,
                      const PermittivityModel& mat, const QuadratureSpec& q = {});
ForceResult lensGradient(const LensGeometry& geom, const Environment& env,
                         const PermittivityModel& mat, const QuadratureSpec& q = {});

/// (X(T) - X(0)) / X(T) for a force or gradient X: the thermal part relative
/// to the full finite-temperature value.
double relativeThermalCorrection(double atT, double atZero);

/// Ideal metal at T = 0: -pi^3 L hbar c / (384 a^3) * shape / sqrt(2a).
double idealMetalForceT0(const LensGeometry& geom, double a);
/// d/da of idealMetalForceT0: 7 pi^3 L hbar c / (768 a^4) * shape / sqrt(2a).
double idealMetalGradientT0(const LensGeometry& geom, double a);

/**
 * PFA force summed over the exact lens profile z(x) = a + B - sqrt(B^2 - B^2 x^2 / A^2),
 * x in [0, d], with the n-series and all integrals done explicitly. No
 * expansion in a/B; used to bound the error of casimirForce.
 */
ForceResult directPfaForceOracle(const LensGeometry& geom, const Environment& env,
                                 const PermittivityModel& mat, const QuadratureSpec& q = {});

/**
 * PFA force for the rotated lens by direct integration over the height z in
 * [a, a + h], before the small a/H reduction that yields the factor G.
 */
ForceResult rotatedDirectOracle(const LensGeometry& geom, const Environment& env,
                                const PermittivityModel& mat, const QuadratureSpec& q = {});

}  // namespace casimir
