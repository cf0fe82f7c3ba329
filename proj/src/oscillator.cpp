#include "casimir/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/special_functions.hpp"
#include "frequency_sum.hpp"

namespace casimir {

OscillatorParams OscillatorParams::fromLeverArm(double omega0, double b, double I, double Az) {
    if (!(b > 0.0 && I > 0.0)) throw DomainError("lever arm and moment of inertia must be positive");
    OscillatorParams p;
    p.omega0 = omega0;
    p.C = b * b / I;
    p.Az = Az;
    p.b = b;
    p.I = I;
    return p;
}

void OscillatorParams::validate(double a) const {
    if (!(std::isfinite(omega0) && omega0 > 0.0)) throw DomainError("omega0 must be positive");
    if (!(std::isfinite(C) && C > 0.0)) throw DomainError("coupling C must be positive");
    if (!(Az > 0.0)) throw DomainError("amplitude Az must be positive");
    if (!(Az < a)) {
        std::ostringstream os;
        os << "amplitude Az = " << Az << " m must be smaller than the separation a = " << a << " m";
        throw DomainError(os.str());
    }
    if (b && I && std::abs(C - *b * *b / *I) > 4e-16 * C)
        throw DomainError("coupling C is inconsistent with b^2 / I");
}

namespace {

// Upper bound of exp(-z) I1(z) over z >= 0 (the maximum is 0.21909 near z = 1.545).
constexpr double kScaledBesselBound = 0.22;

// sum_n n^{-1/2} (RTM^n + RTE^n) e^{-n v (1 - alpha)} S(alpha n v), S = e^{-z} I1(z),
// at one v with R = r^2 given through its logarithm.
double besselSeries(double v, double lnTM, double lnTE, double alpha, const QuadratureSpec& q) {
    const double decay = v * (1.0 - alpha);
    const double qTM = std::exp(lnTM - decay);
    const double qTE = std::exp(lnTE - decay);
    const double qMax = std::max(qTM, qTE);
    if (qMax <= 0.0) return 0.0;
    double pTM = 1.0;
    double pTE = 1.0;
    double sum = 0.0;
    for (long n = 1; n <= q.nMax; ++n) {
        pTM *= qTM;
        pTE *= qTE;
        const double weight = pTM + pTE;
        if (weight == 0.0) return sum;
        sum += weight / std::sqrt(static_cast<double>(n)) * besselI1Scaled(alpha * n * v);
        const double tail = kScaledBesselBound * (pTM * qTM / (1.0 - qTM) + pTE * qTE / (1.0 - qTE)) /
                            std::sqrt(n + 1.0);
        if (tail <= 0.1 * q.relTol * sum) return sum;
    }
    throw ConvergenceError("oscillator n-series exceeded nMax", sum);
}

// Static (zeta = 0) term, summed as sum_n n^{-3} J_n with w = n v:
// J_n = integral_0 w^{3/2} [RTM(w/n)^n + RTE(w/n)^n] e^{-w (1 - alpha)} S(alpha w) dw.
// J_n settles as n grows, so beyond nDirect the remainder is J_N times the
// Hurwitz tail of n^{-3}.
detail::FrequencyTerm staticTerm(const PermittivityModel& mat, double a, double alpha,
                                 const QuadratureSpec& q) {
    const ReflectionAtFrequency refl(mat, 0.0, a);
    const double wMax = q.vSpan / (1.0 - alpha);
    auto J = [&](long n) {
        const double dn = static_cast<double>(n);
        auto f = [&](double w) {
            if (w <= 0.0) return 0.0;
            const auto r = refl.at(w / dn);
            const double lnTM = ReflectionAtFrequency::logSquaredTM(r);
            const double lnTE = ReflectionAtFrequency::logSquaredTE(r);
            const double e = -w * (1.0 - alpha);
            const double weight = std::exp(dn * lnTM + e) + std::exp(dn * lnTE + e);
            return std::pow(w, 1.5) * weight * besselI1Scaled(alpha * w);
        };
        const auto I = integrateAdaptive(f, 0.0, wMax, 0.0, q.relTol / 100.0);
        if (!I.converged) throw ConvergenceError("static oscillator integral did not converge", I.value);
        return I;
    };
    // Ideal metal and Drude have n-independent J_n.
    const bool constant = std::holds_alternative<IdealMetal>(mat) ||
                          std::holds_alternative<DrudeModel>(mat);
    if (constant) {
        const auto I = J(1);
        const double z3 = std::riemann_zeta(3.0);
        return {z3 * I.value, z3 * I.absError};
    }
    double sum = 0.0;
    double err = 0.0;
    Integral last;
    for (long n = 1; n <= q.nDirect; ++n) {
        last = J(n);
        const double w = std::pow(static_cast<double>(n), -3.0);
        sum += w * last.value;
        err += w * last.absError;
    }
    const double tail = last.value * hurwitzZetaTail(3.0, q.nDirect + 1);
    return {sum + tail, err + 1e-3 * std::abs(tail)};
}

detail::FrequencyTerm dynamicTerm(const PermittivityModel& mat, double a, double zeta,
                                  double alpha, const QuadratureSpec& q, double hint) {
    const ReflectionAtFrequency refl(mat, zeta, a);
    auto f = [&](double u) {
        const double v = zeta + u;
        const auto r = refl.at(v);
        return std::pow(v, 1.5) * besselSeries(v, ReflectionAtFrequency::logSquaredTM(r),
                                               ReflectionAtFrequency::logSquaredTE(r), alpha, q);
    };
    const auto I = integrateAdaptive(f, 0.0, q.vSpan / (1.0 - alpha), hint, q.relTol / 10.0);
    if (!I.converged) throw ConvergenceError("oscillator v integral did not converge", I.value);
    return {I.value, I.absError};
}

}  // namespace

ShiftResult frequencyShiftNonlinear(const LensGeometry& geom, const Environment& env,
                                    const PermittivityModel& mat, const OscillatorParams& osc,
                                    const QuadratureSpec& q) {
    ShiftResult out;
    out.warnings = detail::checkInputs(geom, env, mat, q);
    osc.validate(env.a);
    const double a = env.a;
    const double alpha = osc.Az / a;
    auto term = [&](double zeta, double hint) {
        if (zeta == 0.0) return staticTerm(mat, a, alpha, q);
        return dynamicTerm(mat, a, zeta, alpha, q, hint);
    };
    const double pref = -(osc.C / osc.Az) * geom.L * geom.pfaShapeFactor() /
                        (2.0 * std::sqrt(std::numbers::pi) * a * a * std::sqrt(2.0 * a));
    const auto S = detail::rescalePartial(
        pref, [&] { return detail::sumOverFrequencies(a, env.T, q, term, q.vSpan); });
    out.value = pref * S.value;
    out.estAbsError = std::abs(pref) * S.absError;
    out.termsUsed = S.terms;
    out.mode = S.mode;
    return out;
}

LinearShift frequencyShiftLinear(const LensGeometry& geom, const Environment& env,
                                 const PermittivityModel& mat, const OscillatorParams& osc,
                                 const QuadratureSpec& q) {
    osc.validate(env.a);
    LinearShift out;
    out.gradient = lensGradient(geom, env, mat, q);
    const double g = out.gradient.value;
    out.deltaOmegaSquared = -osc.C * g;
    out.omegaR = osc.omega0 * (1.0 - osc.C / (2.0 * osc.omega0 * osc.omega0) * g);
    const double w2 = osc.omega0 * osc.omega0 + out.deltaOmegaSquared;
    if (!(w2 > 0.0))
        throw DomainError("force gradient exceeds the restoring stiffness; no stable resonance");
    out.omegaRFromSquare = std::sqrt(w2);
    return out;
}

ShiftResult frequencyShiftDirectOracle(const LensGeometry& geom, const Environment& env,
                                       const PermittivityModel& mat, const OscillatorParams& osc,
                                       const QuadratureSpec& q) {
    ShiftResult out;
    out.warnings = detail::checkInputs(geom, env, mat, q);
    osc.validate(env.a);
    QuadratureSpec inner = q;
    inner.relTol = std::max(1e-12, q.relTol * 1e-2);
    long terms = 0;
    double forceErr = 0.0;
    auto f = [&](double theta) {
        const double c = std::cos(theta);
        const auto F = lensForce(geom, {env.a + osc.Az * c, env.T}, mat, inner);
        terms += F.termsUsed;
        forceErr = std::max(forceErr, F.estAbsError);
        return c * F.value;
    };
    const auto I = integrateAdaptive(f, 0.0, std::numbers::pi, 0.0, q.relTol / 10.0);
    if (!I.converged) throw ConvergenceError("theta quadrature did not converge", I.value);
    const double pref = -2.0 * osc.C / (std::numbers::pi * osc.Az);
    out.value = pref * I.value;
    out.estAbsError = std::abs(pref) * (I.absError + std::numbers::pi * forceErr);
    out.termsUsed = terms;
    out.mode = env.T == 0.0 ? SumMode::ZeroT : SumMode::FiniteT;
    return out;
}

ShiftResult frequencyShiftForVariant(const LensGeometry& geom, const Environment& env,
                                     const PermittivityModel& mat, const OscillatorParams& osc,
                                     const QuadratureSpec& q) {
    if (geom.variant == LensVariant::SymmetricElliptic)
        throw DomainError("frequencyShiftForVariant requires a two-halves or rotated lens");
    return frequencyShiftNonlinear(geom, env, mat, osc, q);
}

}  // namespace casimir
