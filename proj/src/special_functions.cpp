#include "casimir/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "casimir/errors.hpp"

namespace casimir {

void SeriesControl::validate() const {
    if (!(relTol > 0.0 && relTol < 1.0)) throw DomainError("SeriesControl: relTol must lie in (0, 1)");
    if (maxTerms < 1) throw DomainError("SeriesControl: maxTerms must be >= 1");
}

namespace {

// Below this value of mu = -ln z the ln-z expansion is used for non-integer s.
constexpr double kExpansionCut = 1.0;
constexpr int kExpansionTerms = 48;

bool isInteger(double s) { return std::floor(s) == s; }

std::vector<double> expansionCoefficients(double s) {
    // c_k = zeta(s - k) / k!
    std::vector<double> c(kExpansionTerms);
    double factorial = 1.0;
    for (int k = 0; k < kExpansionTerms; ++k) {
        if (k > 0) factorial *= k;
        c[k] = boost::math::zeta(s - k) / factorial;
    }
    return c;
}

const std::vector<double>& cachedCoefficients(double s) {
    static const std::vector<double> half = expansionCoefficients(0.5);
    static const std::vector<double> minusHalf = expansionCoefficients(-0.5);
    if (s == 0.5) return half;
    return minusHalf;
}

// Li_s(e^{-mu}) = Gamma(1 - s) mu^{s-1} + sum_k zeta(s - k) (-mu)^k / k!,  0 < mu < 2 pi.
double lnExpansion(double s, double mu, const SeriesControl& ctrl) {
    std::vector<double> local;
    const std::vector<double>* coeffs;
    if (s == 0.5 || s == -0.5) {
        coeffs = &cachedCoefficients(s);
    } else {
        local = expansionCoefficients(s);
        coeffs = &local;
    }
    double sum = boost::math::tgamma(1.0 - s) * std::pow(mu, s - 1.0);
    double power = 1.0;
    double prev = INFINITY;
    for (int k = 0; k < kExpansionTerms; ++k) {
        const double term = (*coeffs)[k] * power;
        sum += term;
        const double mag = std::abs(term);
        if (k >= 2 && mag <= ctrl.relTol * std::abs(sum) && mag <= prev) return sum;
        prev = mag;
        power *= -mu;
    }
    return sum;
}

double directSeries(double s, double z, const SeriesControl& ctrl) {
    double sum = 0.0;
    double zn = 1.0;
    for (long n = 1; n <= ctrl.maxTerms; ++n) {
        zn *= z;
        const double term = zn * std::pow(static_cast<double>(n), -s);
        sum += term;
        if (term == 0.0) return sum;
        double tailBound;
        if (z > 0.0) {
            // Successive ratios are bounded by the current one from here on.
            const double ratio = z * std::pow(static_cast<double>(n) / (n + 1), s);
            const double bound = s >= 0.0 ? z : ratio;
            if (bound >= 1.0) continue;
            tailBound = term * bound / (1.0 - bound);
        } else {
            tailBound = std::abs(term * z);
        }
        if (tailBound <= ctrl.relTol * std::abs(sum)) return sum;
    }
    std::ostringstream os;
    os << "polylog(" << s << ", " << z << "): series did not converge within " << ctrl.maxTerms
       << " terms";
    throw ConvergenceError(os.str(), sum);
}

double besselI1Series(double z, const SeriesControl& ctrl) {
    const double half = 0.5 * z;
    const double q = half * half;
    double term = half;
    double sum = half;
    for (long k = 0; k < ctrl.maxTerms; ++k) {
        const double next = term * q / ((k + 1.0) * (k + 2.0));
        sum += next;
        if (next <= ctrl.relTol * sum && next <= term) return sum;
        term = next;
    }
    throw ConvergenceError("besselI1: series did not converge", sum);
}

// exp(-z) I1(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(1) / z^k, truncated at the smallest term.
double besselI1ScaledAsymptotic(double z, const SeriesControl& ctrl) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        const double odd = 2.0 * k + 1.0;
        const double next = term * (odd * odd - 4.0) / (8.0 * (k + 1.0) * z);
        if (std::abs(next) > std::abs(term)) break;
        sum += next;
        if (std::abs(next) <= ctrl.relTol * std::abs(sum)) break;
        term = next;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace

double polylogExp(double s, double mu, const SeriesControl& ctrl) {
    ctrl.validate();
    if (std::isnan(mu) || std::isnan(s)) throw DomainError("polylog: NaN argument");
    if (mu == INFINITY) return 0.0;
    if (mu < 0.0 || (mu == 0.0 && s <= 1.0)) {
        std::ostringstream os;
        os << "polylog(" << s << ", e^" << -mu << "): argument outside the unit disc";
        throw DomainError(os.str());
    }
    if (mu == 0.0) return boost::math::zeta(s);
    if (!isInteger(s) && mu < kExpansionCut) return lnExpansion(s, mu, ctrl);
    if (s == 1.0) return -std::log1p(-std::exp(-mu));
    return directSeries(s, std::exp(-mu), ctrl);
}

double polylog(double s, double z, const SeriesControl& ctrl) {
    ctrl.validate();
    if (!std::isfinite(s) || !std::isfinite(z)) throw DomainError("polylog: non-finite argument");
    if (z == 0.0) return 0.0;
    const double az = std::abs(z);
    if (az > 1.0 || (az == 1.0 && s <= 1.0)) {
        std::ostringstream os;
        os << "polylog(" << s << ", " << z << "): |z| must be < 1 for s <= 1 and <= 1 otherwise";
        throw DomainError(os.str());
    }
    if (z == 1.0) return boost::math::zeta(s);
    if (z == -1.0) return -(1.0 - std::pow(2.0, 1.0 - s)) * boost::math::zeta(s);
    if (s == 1.0) return -std::log1p(-z);
    if (z > 0.0 && !isInteger(s) && -std::log(z) < kExpansionCut)
        return lnExpansion(s, -std::log(z), ctrl);
    return directSeries(s, z, ctrl);
}

double besselI1(double z, const SeriesControl& ctrl) {
    ctrl.validate();
    if (std::isnan(z)) throw DomainError("besselI1: NaN argument");
    if (z < 0.0) return -besselI1(-z, ctrl);
    if (z <= kBesselAsymptoticThreshold) return besselI1Series(z, ctrl);
    return besselI1ScaledAsymptotic(z, ctrl) * std::exp(z);
}

double besselI1Scaled(double z, const SeriesControl& ctrl) {
    ctrl.validate();
    if (std::isnan(z)) throw DomainError("besselI1Scaled: NaN argument");
    if (z < 0.0) return -besselI1Scaled(-z, ctrl);
    if (z <= kBesselAsymptoticThreshold) return besselI1Series(z, ctrl) * std::exp(-z);
    return besselI1ScaledAsymptotic(z, ctrl);
}

double gaussHalfIntegral() { return std::sqrt(std::numbers::pi); }

double hurwitzZetaTail(double s, long m) {
    if (!(s > 1.0) || m < 1) throw DomainError("hurwitzZetaTail: requires s > 1 and m >= 1");
    // Sum the first few terms exactly, then Euler-Maclaurin from M >= 64.
    double sum = 0.0;
    long M = m;
    for (; M < 64; ++M) sum += std::pow(static_cast<double>(M), -s);
    const double x = static_cast<double>(M);
    const double fM = std::pow(x, -s);
    sum += x * fM / (s - 1.0) + 0.5 * fM;
    sum += s * fM / (12.0 * x);
    sum -= s * (s + 1.0) * (s + 2.0) * fM / (720.0 * x * x * x);
    sum += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * fM / (30240.0 * std::pow(x, 5));
    return sum;
}

}  // namespace casimir
