#include "casimir/engine.hpp"

#include <cmath>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/special_functions.hpp"
#include "frequency_sum.hpp"

namespace casimir {

void QuadratureSpec::validate() const {
    if (!(relTol >= 1e-13 && relTol < 1.0))
        throw DomainError("QuadratureSpec: relTol must lie in [1e-13, 1)");
    if (lMax < 1) throw DomainError("QuadratureSpec: lMax must be >= 1");
    if (nMax < 1) throw DomainError("QuadratureSpec: nMax must be >= 1");
    if (!(vSpan >= 40.0 && std::isfinite(vSpan)))
        throw DomainError("QuadratureSpec: vSpan must be finite and >= 40");
    if (nDirect < 16) throw DomainError("QuadratureSpec: nDirect must be >= 16");
}

std::string toString(SumMode m) { return m == SumMode::FiniteT ? "finite-T" : "zero-T"; }

RotationFactor rotationFactor(double A, double B, double phi) {
    if (!(A > 0.0 && B > 0.0)) throw DomainError("rotationFactor: semiaxes must be positive");
    if (!std::isfinite(phi)) throw DomainError("rotationFactor: phi must be finite");
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    RotationFactor r;
    r.H = std::sqrt(A * A * s * s + B * B * c * c);
    const double ratio = A / B;
    r.G = std::pow(ratio * ratio * s * s + c * c, -0.75);
    return r;
}

namespace {

enum class Kernel { Force, Gradient };

// integral_{zeta}^{zeta + vSpan} v^p [Li_s(rTM^2 e^{-v}) + Li_s(rTE^2 e^{-v})] dv
// with (p, s) = (3/2, 1/2) for the force and (5/2, -1/2) for the gradient.
detail::FrequencyTerm lifshitzTerm(Kernel k, const PermittivityModel& mat, double a, double zeta,
                                   const QuadratureSpec& q, double absTolHint) {
    const ReflectionAtFrequency refl(mat, zeta, a);
    const bool ideal = std::holds_alternative<IdealMetal>(mat);
    const double s = k == Kernel::Force ? 0.5 : -0.5;
    const double p = k == Kernel::Force ? 1.5 : 2.5;
    auto f = [&](double u) {
        const double v = zeta + u;
        if (v <= 0.0) return 0.0;
        const auto r = refl.at(v);
        const double lnTM = ReflectionAtFrequency::logSquaredTM(r);
        double val;
        if (ideal) {
            val = 2.0 * polylogExp(s, v);
        } else {
            const double lnTE = ReflectionAtFrequency::logSquaredTE(r);
            val = polylogExp(s, v - lnTM) + polylogExp(s, v - lnTE);
        }
        return std::pow(v, p) * val;
    };
    const auto I = integrateAdaptive(f, 0.0, q.vSpan, absTolHint, q.relTol / 10.0);
    if (!I.converged)
        throw ConvergenceError("v integral did not converge at zeta = " + std::to_string(zeta),
                               I.value);
    return {I.value, I.absError};
}

ForceResult evaluate(Kernel k, const LensGeometry& geom, const Environment& env,
                     const PermittivityModel& mat, const QuadratureSpec& q) {
    ForceResult out;
    out.warnings = detail::checkInputs(geom, env, mat, q);
    const double a = env.a;
    auto term = [&](double zeta, double hint) { return lifshitzTerm(k, mat, a, zeta, q, hint); };
    const double shape = geom.pfaShapeFactor();
    const double base = geom.L * shape / (4.0 * std::sqrt(std::numbers::pi) * std::sqrt(2.0 * a));
    const double pref = k == Kernel::Force ? -base / (a * a) : base / (a * a * a);
    const auto S = detail::rescalePartial(
        pref, [&] { return detail::sumOverFrequencies(a, env.T, q, term, q.vSpan); });
    out.value = pref * S.value;
    out.estAbsError = std::abs(pref) * S.absError;
    out.termsUsed = S.terms;
    out.mode = S.mode;
    return out;
}

void requireVariant(const LensGeometry& geom, LensVariant v, const char* op) {
    if (geom.variant != v)
        throw DomainError(std::string(op) + " requires a " + toString(v) + " lens, got " +
                          toString(geom.variant));
}

}  // namespace

ForceResult casimirForce(const LensGeometry& geom, const Environment& env,
                         const PermittivityModel& mat, const QuadratureSpec& q) {
    requireVariant(geom, LensVariant::SymmetricElliptic, "casimirForce");
    return evaluate(Kernel::Force, geom, env, mat, q);
}

ForceResult casimirGradient(const LensGeometry& geom, const Environment& env,
                            const PermittivityModel& mat, const QuadratureSpec& q) {
    requireVariant(geom, LensVariant::SymmetricElliptic, "casimirGradient");
    return evaluate(Kernel::Gradient, geom, env, mat, q);
}

ForceResult zeroTemperatureForce(const LensGeometry& geom, double a, const PermittivityModel& mat,
                                 const QuadratureSpec& q) {
    return evaluate(Kernel::Force, geom, {a, 0.0}, mat, q);
}

ForceResult zeroTemperatureGradient(const LensGeometry& geom, double a,
                                    const PermittivityModel& mat, const QuadratureSpec& q) {
    return evaluate(Kernel::Gradient, geom, {a, 0.0}, mat, q);
}

ForceResult twoHalvesForce(const LensGeometry& geom, const Environment& env,
                           const PermittivityModel& mat, const QuadratureSpec& q) {
    requireVariant(geom, LensVariant::TwoHalves, "twoHalvesForce");
    return evaluate(Kernel::Force, geom, env, mat, q);
}

ForceResult twoHalvesGradient(const LensGeometry& geom, const Environment& env,
                              const PermittivityModel& mat, const QuadratureSpec& q) {
    requireVariant(geom, LensVariant::TwoHalves, "twoHalvesGradient");
    return evaluate(Kernel::Gradient, geom, env, mat, q);
}

ForceResult rotatedForce(const LensGeometry& geom, const Environment& env,
                         const PermittivityModel& mat, const QuadratureSpec& q) {
    requireVariant(geom, LensVariant::Rotated, "rotatedForce");
    return evaluate(Kernel::Force, geom, env, mat, q);
}

ForceResult rotatedGradient(const LensGeometry& geom, const Environment& env,
                            const PermittivityModel& mat, const QuadratureSpec& q) {
    requireVariant(geom, LensVariant::Rotated, "rotatedGradient");
    return evaluate(Kernel::Gradient, geom, env, mat, q);
}

ForceResult lensForce(const LensGeometry& geom, const Environment& env,
                      const PermittivityModel& mat, const QuadratureSpec& q) {
    return evaluate(Kernel::Force, geom, env, mat, q);
}

ForceResult lensGradient(const LensGeometry& geom, const Environment& env,
                         const PermittivityModel& mat, const QuadratureSpec& q) {
    return evaluate(Kernel::Gradient, geom, env, mat, q);
}

double relativeThermalCorrection(double atT, double atZero) {
    if (atT == 0.0) throw DomainError("relativeThermalCorrection: finite-temperature value is zero");
    return (atT - atZero) / atT;
}

double idealMetalForceT0(const LensGeometry& geom, double a) {
    using K = PhysicalConstants;
    if (!(a > 0.0)) throw DomainError("idealMetalForceT0: a must be positive");
    constexpr double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    return -pi3 * geom.L * K::hbar * K::c / (384.0 * a * a * a) * geom.pfaShapeFactor() /
           std::sqrt(2.0 * a);
}

double idealMetalGradientT0(const LensGeometry& geom, double a) {
    using K = PhysicalConstants;
    if (!(a > 0.0)) throw DomainError("idealMetalGradientT0: a must be positive");
    constexpr double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    return 7.0 * pi3 * geom.L * K::hbar * K::c / (768.0 * a * a * a * a) *
           geom.pfaShapeFactor() / std::sqrt(2.0 * a);
}

}  // namespace casimir
