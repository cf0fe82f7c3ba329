#pragma once

#include "casimir/geometry.hpp"

namespace casimir {

/// Applied voltage V and residual potential V0, in volts.
struct BiasState {
    double V = 0.0;
    double V0 = 0.0;
};

/// Leading-order PFA electric force on a symmetric elliptic lens,
/// -pi eps0 L / (2a) * A / sqrt(2aB) * (V - V0)^2. Attractive forces are negative.
double pfaElectricForce(const LensGeometry& geom, const Environment& env, const BiasState& bias);

/// Two-conductor result for a circular cylinder of radius R and length L
/// above a plane. Negative (attractive).
double exactCircularElectricForce(double R, const Environment& env, const BiasState& bias,
                                  double L);

/// Three-term small-a/R expansion of exactCircularElectricForce.
double expandedElectricForce(double R, const Environment& env, const BiasState& bias, double L);

/// 1 - (a/R)/12 + 17 (a/R)^2 / 480
double electricCorrectionFactor(double aOverR);

/// PFA electric force for the two-halves and rotated lenses.
double asymmetricElectricForce(const LensGeometry& geom, const Environment& env,
                               const BiasState& bias);

}  // namespace casimir
