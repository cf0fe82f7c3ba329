#include "frequency_sum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::detail {

FrequencySum sumOverFrequencies(double a, double T, const QuadratureSpec& q,
                                const TermFunction& term, double zetaMax) {
    using K = PhysicalConstants;
    FrequencySum out;
    if (T == 0.0) {
        out.mode = SumMode::ZeroT;
        long calls = 0;
        const double scale = K::hbar * K::c / (4.0 * std::numbers::pi * a);
        auto f = [&](double zeta) {
            ++calls;
            try {
                return term(zeta, 0.0).value;
            } catch (const ConvergenceError& e) {
                // No meaningful partial value exists for the frequency integral.
                throw ConvergenceError(e.what(), NAN);
            }
        };
        const auto I = integrateAdaptive(f, 0.0, zetaMax, 0.0, q.relTol / 10.0);
        if (!I.converged)
            throw ConvergenceError("zero-temperature frequency integral did not converge",
                                   scale * I.value);
        out.value = scale * I.value;
        out.absError = scale * I.absError;
        out.terms = calls;
        return out;
    }

    const double spacing = matsubaraSpacing(a, T);
    double sum = 0.0;
    double err = 0.0;
    int small = 0;
    for (long l = 0; l < q.lMax; ++l) {
        const double zeta = static_cast<double>(l) * spacing;
        if (zeta > zetaMax) {
            out.terms = l;
            break;
        }
        const double hint = l == 0 ? 0.0 : 0.01 * q.relTol * std::abs(sum);
        const double w = l == 0 ? 0.5 : 1.0;
        FrequencyTerm t;
        try {
            t = term(zeta, hint);
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(e.what(), K::kB * T * (sum + w * e.partialValue()));
        }
        sum += w * t.value;
        err += w * t.absError;
        out.terms = l + 1;
        if (l > 0 && std::abs(t.value) < 0.1 * q.relTol * std::abs(sum)) {
            if (++small == 3) {
                // Remaining terms decay at least geometrically with the spacing.
                err += std::abs(t.value) / -std::expm1(-std::min(spacing, 1.0));
                break;
            }
        } else {
            small = 0;
        }
        if (l + 1 == q.lMax) {
            std::ostringstream os;
            os << "Matsubara sum not converged after lMax = " << q.lMax
               << " terms (a = " << a << " m, T = " << T << " K)";
            const double kT = K::kB * T;
            throw ConvergenceError(os.str(), kT * sum);
        }
    }
    out.value = K::kB * T * sum;
    out.absError = K::kB * T * err;
    return out;
}

std::vector<std::string> checkInputs(const LensGeometry& geom, const Environment& env,
                                     const PermittivityModel& mat, const QuadratureSpec& q) {
    q.validate();
    validateModel(mat);
    const auto report = validateGeometry(geom, env);
    requireValid(report);
    return report.warnings();
}

}  // namespace casimir::detail
