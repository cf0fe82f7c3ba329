// Direct PFA evaluations used as references for the closed-form engine.
#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/engine.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "frequency_sum.hpp"

namespace casimir {

namespace {

// Terms summed one by one before the geometric remainder is added in closed form.
constexpr long kExplicitTerms = 4096;

// sum_{n>=1} (qTM^n + qTE^n)
double pairSeries(double qTM, double qTE, const QuadratureSpec& q) {
    const double qMax = std::max(qTM, qTE);
    if (qMax <= 0.0) return 0.0;
    double pTM = 1.0;
    double pTE = 1.0;
    double sum = 0.0;
    const long cap = std::min(q.nMax, kExplicitTerms);
    for (long n = 1; n <= cap; ++n) {
        pTM *= qTM;
        pTE *= qTE;
        sum += pTM + pTE;
        const double tail = (pTM * qTM / (1.0 - qTM)) + (pTE * qTE / (1.0 - qTE));
        if (tail <= 0.1 * q.relTol * sum) return sum;
    }
    if (cap < kExplicitTerms)
        throw ConvergenceError("n-series exceeded nMax", sum);
    return sum + pTM * qTM / (1.0 - qTM) + pTE * qTE / (1.0 - qTE);
}

// Shared structure: kB T sum'_l integral_{zeta_l} v^2 dv Y(v), where
// Y(v) = integral over the lens coordinate of sum_n (rTM^{2n} + rTE^{2n}) e^{-n v z/a}.
template <class Profile>
detail::FrequencySum directSum(const Environment& env, const PermittivityModel& mat,
                               const QuadratureSpec& q, const Profile& profile) {
    const double a = env.a;
    auto term = [&](double zeta, double hint) -> detail::FrequencyTerm {
        const ReflectionAtFrequency refl(mat, zeta, a);
        auto fv = [&](double u) {
            const double v = zeta + u;
            if (v <= 0.0) return 0.0;
            const auto r = refl.at(v);
            const double rTM2 = r.rTM * r.rTM;
            const double rTE2 = r.rTE * r.rTE;
            const double y = profile(v, [&](double zOverA) {
                const double e = std::exp(-v * zOverA);
                return pairSeries(rTM2 * e, rTE2 * e, q);
            });
            return v * v * y;
        };
        const auto I = integrateAdaptive(fv, 0.0, q.vSpan, hint, q.relTol / 10.0);
        if (!I.converged) throw ConvergenceError("oracle v integral did not converge", I.value);
        return {I.value, I.absError};
    };
    return detail::sumOverFrequencies(a, env.T, q, term, q.vSpan);
}

ForceResult finish(const detail::FrequencySum& S, double pref, std::vector<std::string> warnings) {
    ForceResult out;
    out.value = pref * S.value;
    out.estAbsError = std::abs(pref) * S.absError;
    out.termsUsed = S.terms;
    out.mode = S.mode;
    out.warnings = std::move(warnings);
    return out;
}

}  // namespace

ForceResult directPfaForceOracle(const LensGeometry& geom, const Environment& env,
                                 const PermittivityModel& mat, const QuadratureSpec& q) {
    if (geom.variant != LensVariant::SymmetricElliptic)
        throw DomainError("directPfaForceOracle requires a symmetric lens");
    auto warnings = detail::checkInputs(geom, env, mat, q);
    const double A = geom.A;
    const double B = geom.B;
    const double a = env.a;

    auto profile = [&](double v, const auto& series) {
        // Beyond 12 widths of the Gaussian core the integrand is below e^{-72}.
        const double xCut = std::min(geom.d, 12.0 * A * std::sqrt(2.0 * a / (B * v)));
        auto fx = [&](double x) {
            const double t = x / A;
            const double sag = B * t * t / (1.0 + std::sqrt(std::max(0.0, 1.0 - t * t)));
            return series(1.0 + sag / a);
        };
        const auto I = integrateAdaptive(fx, 0.0, xCut, 0.0, q.relTol / 100.0);
        return I.value;
    };
    const double pref = -geom.L / (4.0 * std::numbers::pi * a * a * a);
    const auto S = detail::rescalePartial(pref, [&] { return directSum(env, mat, q, profile); });
    return finish(S, pref, std::move(warnings));
}

ForceResult rotatedDirectOracle(const LensGeometry& geom, const Environment& env,
                                const PermittivityModel& mat, const QuadratureSpec& q) {
    if (geom.variant != LensVariant::Rotated)
        throw DomainError("rotatedDirectOracle requires a rotated lens");
    auto warnings = detail::checkInputs(geom, env, mat, q);
    const double a = env.a;
    const double H = rotationFactor(geom.A, geom.B, geom.phi).H;

    // z = a + u^2 over the lens height; the Jacobian of the chord width is
    // 2 (H - u^2) / sqrt(2H - u^2).
    auto profile = [&](double v, const auto& series) {
        const double uCut = std::min(std::sqrt(geom.h), 9.0 * std::sqrt(a / v));
        auto fu = [&](double u) {
            const double u2 = u * u;
            return 2.0 * (H - u2) / std::sqrt(2.0 * H - u2) * series(1.0 + u2 / a);
        };
        const auto I = integrateAdaptive(fu, 0.0, uCut, 0.0, q.relTol / 100.0);
        return I.value;
    };
    const double pref = -geom.L / (4.0 * std::numbers::pi * a * a * a) * geom.A * geom.B / (H * H);
    const auto S = detail::rescalePartial(pref, [&] { return directSum(env, mat, q, profile); });
    return finish(S, pref, std::move(warnings));
}

}  // namespace casimir
