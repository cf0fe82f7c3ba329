#pragma once

#include <functional>

#include "casimir/engine.hpp"
#include "casimir/errors.hpp"

namespace casimir::detail {

struct FrequencyTerm {
    double value = 0.0;
    double absError = 0.0;
};

struct FrequencySum {
    double value = 0.0;
    double absError = 0.0;
    long terms = 0;
    SumMode mode = SumMode::FiniteT;
};

/// term(zeta, absTolHint) evaluates one frequency contribution; absTolHint is
/// an absolute accuracy that suffices given what has been summed so far (0 if
/// nothing is known yet).
using TermFunction = std::function<FrequencyTerm(double zeta, double absTolHint)>;

/**
 * T > 0:  kB T sum'_l term(zeta_l), the l = 0 term halved, stopped once three
 *         consecutive terms each fall below relTol/10 of the running sum.
 * T == 0: hbar c / (4 pi a) * integral_0^{zetaMax} term(zeta) dzeta.
 * The result carries units of energy times the unit of term.
 */
FrequencySum sumOverFrequencies(double a, double T, const QuadratureSpec& q,
                                const TermFunction& term, double zetaMax);

/// Runs f, converting a ConvergenceError's partial value by the factor scale.
template <class F>
auto rescalePartial(double scale, F&& f) {
    try {
        return f();
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what(), scale * e.partialValue());
    }
}

/// Common prefix of operations that take a full geometry + environment.
std::vector<std::string> checkInputs(const LensGeometry& geom, const Environment& env,
                                     const PermittivityModel& mat, const QuadratureSpec& q);

}  // namespace casimir::detail
