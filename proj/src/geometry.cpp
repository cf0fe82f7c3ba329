#include "casimir/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/engine.hpp"
#include "casimir/errors.hpp"

namespace casimir {

std::string toString(LensVariant v) {
    switch (v) {
        case LensVariant::SymmetricElliptic: return "symmetric";
        case LensVariant::TwoHalves: return "two-halves";
        case LensVariant::Rotated: return "rotated";
    }
    return "unknown";
}

LensGeometry LensGeometry::symmetric(double A, double B, double h, double d, double L) {
    LensGeometry g;
    g.variant = LensVariant::SymmetricElliptic;
    g.A = A;
    g.B = B;
    g.h = h;
    g.d = d;
    g.L = L;
    return g;
}

LensGeometry LensGeometry::twoHalves(double A1, double B1, double A2, double B2, double h,
                                     double d, double L) {
    LensGeometry g;
    g.variant = LensVariant::TwoHalves;
    g.A1 = A1;
    g.B1 = B1;
    g.A2 = A2;
    g.B2 = B2;
    g.h = h;
    g.d = d;
    g.L = L;
    return g;
}

LensGeometry LensGeometry::rotated(double A, double B, double phi, double h, double d,
                                   double L) {
    LensGeometry g = symmetric(A, B, h, d, L);
    g.variant = LensVariant::Rotated;
    g.phi = phi;
    return g;
}

double LensGeometry::halfWidthForThickness(double A, double B, double h) {
    const double s = std::min(h, B);
    return (A / B) * std::sqrt(s * (2.0 * B - s));
}

double LensGeometry::pfaShapeFactor() const {
    switch (variant) {
        case LensVariant::SymmetricElliptic: return A / std::sqrt(B);
        case LensVariant::TwoHalves:
            return 0.5 * (A1 / std::sqrt(B1) + A2 / std::sqrt(B2));
        case LensVariant::Rotated: return A / std::sqrt(B) * rotationFactor(A, B, phi).G;
    }
    return 0.0;
}

double LensGeometry::referenceLength() const {
    switch (variant) {
        case LensVariant::SymmetricElliptic: return B;
        case LensVariant::TwoHalves: return std::min(B1, B2);
        case LensVariant::Rotated: return rotationFactor(A, B, phi).H;
    }
    return B;
}

MatsubaraPoint matsubaraPoint(int l, double a, double T) {
    using K = PhysicalConstants;
    MatsubaraPoint p;
    p.l = l;
    if (l == 0 || T == 0.0) return p;
    p.xi = 2.0 * std::numbers::pi * K::kB * T * l / K::hbar;
    p.zeta = l * matsubaraSpacing(a, T);
    return p;
}

double matsubaraSpacing(double a, double T) {
    using K = PhysicalConstants;
    return 4.0 * std::numbers::pi * a * K::kB * T / (K::hbar * K::c);
}

bool ValidityReport::ok() const { return errors().empty(); }

std::vector<std::string> ValidityReport::warnings() const {
    std::vector<std::string> out;
    for (const auto& i : issues)
        if (i.severity == ValidityIssue::Severity::Warning) out.push_back(i.message);
    return out;
}

std::vector<std::string> ValidityReport::errors() const {
    std::vector<std::string> out;
    for (const auto& i : issues)
        if (i.severity == ValidityIssue::Severity::Error) out.push_back(i.message);
    return out;
}

namespace {

bool positiveFinite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ValidityReport validateGeometry(const LensGeometry& geom, const Environment& env) {
    ValidityReport r;
    auto error = [&r](std::string msg) {
        r.issues.push_back({ValidityIssue::Severity::Error, std::move(msg)});
    };
    auto warn = [&r](std::string msg) {
        r.issues.push_back({ValidityIssue::Severity::Warning, std::move(msg)});
    };
    auto requirePositive = [&](const char* name, double x) {
        if (!positiveFinite(x)) {
            std::ostringstream os;
            os << name << " must be a positive finite length (got " << x << ")";
            error(os.str());
            return false;
        }
        return true;
    };

    bool lengthsOk = requirePositive("h", geom.h) & requirePositive("d", geom.d) &
                     requirePositive("L", geom.L);

    switch (geom.variant) {
        case LensVariant::SymmetricElliptic:
            lengthsOk &= requirePositive("A", geom.A) & requirePositive("B", geom.B);
            if (lengthsOk && geom.A < geom.B)
                error("semiaxes must satisfy A >= B for a symmetric elliptic lens");
            if (lengthsOk && geom.d > geom.A) error("half-width d must not exceed A");
            break;
        case LensVariant::TwoHalves:
            lengthsOk &= requirePositive("A1", geom.A1) & requirePositive("B1", geom.B1) &
                         requirePositive("A2", geom.A2) & requirePositive("B2", geom.B2);
            if (lengthsOk && geom.d > std::min(geom.A1, geom.A2))
                error("half-width d must not exceed the semiaxes A1 and A2");
            break;
        case LensVariant::Rotated:
            lengthsOk &= requirePositive("A", geom.A) & requirePositive("B", geom.B);
            if (!(geom.phi >= 0.0 && geom.phi <= std::numbers::pi / 2))
                error("rotation angle phi must lie in [0, pi/2]");
            else if (lengthsOk && geom.h >= 2.0 * rotationFactor(geom.A, geom.B, geom.phi).H)
                error("lens thickness h must be smaller than the rotated cylinder extent 2H");
            break;
    }

    if (!positiveFinite(env.a)) error("separation a must be positive");
    if (!(std::isfinite(env.T) && env.T >= 0.0)) error("temperature T must be >= 0");

    if (!r.ok() || !lengthsOk) return r;

    const double ref = geom.referenceLength();
    r.aOverB = env.a / ref;
    r.aOverH = env.a / geom.h;
    r.pfaErrorEstimate = 0.3 * r.aOverB;
    if (r.aOverB > kPfaWarnRatio) {
        std::ostringstream os;
        os << "a/B = " << r.aOverB << " exceeds " << kPfaWarnRatio
           << "; PFA error estimate " << 100.0 * r.pfaErrorEstimate << "%";
        warn(os.str());
    }
    if (r.aOverH > kPfaWarnRatio) {
        std::ostringstream os;
        os << "a/h = " << r.aOverH << " exceeds " << kPfaWarnRatio;
        warn(os.str());
    }
    return r;
}

void requireValid(const ValidityReport& report) {
    const auto errs = report.errors();
    if (errs.empty()) return;
    std::string msg = "invalid geometry:";
    for (const auto& e : errs) msg += " " + e + ";";
    throw DomainError(msg);
}

}  // namespace casimir
