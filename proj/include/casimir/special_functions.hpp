#pragma once

namespace casimir {

/// Truncation controls shared by the series evaluations below.
struct SeriesControl {
    double relTol = 1e-12;
    long maxTerms = 1'000'000;

    void validate() const;
};

/**
 * Polylogarithm Li_s(z) = sum_{n>=1} z^n / n^s for real s and real z.
 *
 * |z| < 1 is required for s <= 1; for s > 1, |z| == 1 is accepted as well.
 * Non-integer orders with z close to 1 are evaluated through the expansion in
 * ln z, which converges for |ln z| < 2 pi; everything else is summed directly.
 *
 * Throws DomainError outside the domain and ConvergenceError (carrying the
 * partial sum) when maxTerms is exhausted.
 */
double polylog(double s, double z, const SeriesControl& ctrl = {});

/// Li_s(exp(-mu)) for mu > 0. Lets callers whose argument is r^2 e^{-v}
/// pass mu = v - ln r^2 without first rounding e^{-mu} to a double near 1.
double polylogExp(double s, double mu, const SeriesControl& ctrl = {});

/// Modified Bessel function of the first kind, order one.
double besselI1(double z, const SeriesControl& ctrl = {});

/// exp(-|z|) I1(z), finite for every z.
double besselI1Scaled(double z, const SeriesControl& ctrl = {});

/// Series-to-asymptotic switch point of the Bessel evaluation.
inline constexpr double kBesselAsymptoticThreshold = 30.0;

/// Gamma(1/2) = integral_0^inf e^{-t} t^{-1/2} dt = sqrt(pi).
double gaussHalfIntegral();

/// sum_{n >= m} n^{-s} for s > 1 and m >= 1.
double hurwitzZetaTail(double s, long m);

}  // namespace casimir
