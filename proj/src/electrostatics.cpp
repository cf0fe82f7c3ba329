#include "casimir/electrostatics.hpp"

#include <cmath>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

double biasSquared(const BiasState& bias) {
    if (!std::isfinite(bias.V) || !std::isfinite(bias.V0))
        throw DomainError("bias voltages must be finite");
    const double dv = bias.V - bias.V0;
    return dv * dv;
}

void requireSeparation(double a) {
    if (!(std::isfinite(a) && a > 0.0)) throw DomainError("separation a must be positive");
}

double pfaForShape(double shape, double a, double L, double dv2) {
    return -std::numbers::pi * PhysicalConstants::eps0 * L / (2.0 * a) * shape /
           std::sqrt(2.0 * a) * dv2;
}

void requireLensOk(const LensGeometry& geom, const Environment& env) {
    requireSeparation(env.a);
    requireValid(validateGeometry(geom, {env.a, 0.0}));
}

}  // namespace

double pfaElectricForce(const LensGeometry& geom, const Environment& env, const BiasState& bias) {
    if (geom.variant != LensVariant::SymmetricElliptic)
        throw DomainError("pfaElectricForce requires a symmetric lens");
    requireLensOk(geom, env);
    return pfaForShape(geom.pfaShapeFactor(), env.a, geom.L, biasSquared(bias));
}

double asymmetricElectricForce(const LensGeometry& geom, const Environment& env,
                               const BiasState& bias) {
    if (geom.variant == LensVariant::SymmetricElliptic)
        throw DomainError("asymmetricElectricForce requires a two-halves or rotated lens");
    requireLensOk(geom, env);
    return pfaForShape(geom.pfaShapeFactor(), env.a, geom.L, biasSquared(bias));
}

double exactCircularElectricForce(double R, const Environment& env, const BiasState& bias,
                                  double L) {
    requireSeparation(env.a);
    if (!(R > 0.0 && L > 0.0)) throw DomainError("radius and length must be positive");
    const double dv2 = biasSquared(bias);
    const double eps = env.a / R;
    // Delta = R sqrt(2 eps + eps^2); ln((h - Delta)/(h + Delta)) = -2 acosh(1 + eps),
    // written with log1p so that small eps keeps full precision.
    const double root = std::sqrt(eps * (2.0 + eps));
    const double delta = R * root;
    const double lg = -2.0 * std::log1p(eps + root);
    return -4.0 * std::numbers::pi * PhysicalConstants::eps0 * L * dv2 / (delta * lg * lg);
}

double electricCorrectionFactor(double aOverR) {
    return 1.0 - aOverR / 12.0 + 17.0 * aOverR * aOverR / 480.0;
}

double expandedElectricForce(double R, const Environment& env, const BiasState& bias, double L) {
    requireSeparation(env.a);
    if (!(R > 0.0 && L > 0.0)) throw DomainError("radius and length must be positive");
    return pfaForShape(std::sqrt(R), env.a, L, biasSquared(bias)) *
           electricCorrectionFactor(env.a / R);
}

}  // namespace casimir
