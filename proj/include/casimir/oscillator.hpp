#pragma once

#include <optional>
#include <string>
#include <vector>

#include "casimir/engine.hpp"

namespace casimir {

/// Torsional oscillator carrying the lens; a(t) = a + Az cos(omega_r t).
struct OscillatorParams {
    double omega0 = 0.0;  // natural angular frequency, rad/s
    double C = 0.0;       // b^2 / I, 1/kg
    double Az = 0.0;      // oscillation amplitude, m
    std::optional<double> b;  // lever arm, m
    std::optional<double> I;  // moment of inertia, kg m^2

    static OscillatorParams fromLeverArm(double omega0, double b, double I, double Az);

    /// Throws DomainError unless omega0 > 0, C > 0 and 0 < Az < a.
    void validate(double a) const;
};

struct ShiftResult {
    double value = 0.0;  // omega_r^2 - omega0^2, rad^2/s^2
    double estAbsError = 0.0;
    long termsUsed = 0;
    SumMode mode = SumMode::FiniteT;
    std::vector<std::string> warnings;
};

/// Shift of the squared resonance frequency for finite amplitude, with the
/// cycle average reduced to e^{-nv} I1(Az n v / a) under the Matsubara and
/// n sums. Uses the lens shape factor, so every variant is accepted.
ShiftResult frequencyShiftNonlinear(const LensGeometry& geom, const Environment& env,
                                    const PermittivityModel& mat, const OscillatorParams& osc,
                                    const QuadratureSpec& q = {});

struct LinearShift {
    double deltaOmegaSquared = 0.0;  // -C dF/da
    double omegaR = 0.0;             // omega0 [1 - C/(2 omega0^2) dF/da]
    double omegaRFromSquare = 0.0;   // sqrt(omega0^2 + deltaOmegaSquared)
    ForceResult gradient;
};

LinearShift frequencyShiftLinear(const LensGeometry& geom, const Environment& env,
                                 const PermittivityModel& mat, const OscillatorParams& osc,
                                 const QuadratureSpec& q = {});

/// -(2C / (pi Az)) integral_0^pi cos(theta) F(a + Az cos theta) d(theta), with F
/// from the engine at every node. The resonance frequency drops out under
/// theta = omega_r t, so no iteration is needed.
ShiftResult frequencyShiftDirectOracle(const LensGeometry& geom, const Environment& env,
                                       const PermittivityModel& mat, const OscillatorParams& osc,
                                       const QuadratureSpec& q = {});

/// frequencyShiftNonlinear restricted to two-halves and rotated lenses.
ShiftResult frequencyShiftForVariant(const LensGeometry& geom, const Environment& env,
                                     const PermittivityModel& mat, const OscillatorParams& osc,
                                     const QuadratureSpec& q = {});

}  // namespace casimir
