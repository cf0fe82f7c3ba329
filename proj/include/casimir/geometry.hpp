#pragma once

#include <string>
#include <vector>

namespace casimir {

enum class LensVariant { SymmetricElliptic, TwoHalves, Rotated };

std::string toString(LensVariant v);

/**
 * Cross-section of a cylindrical lens facing a plate. All lengths in metres.
 *
 * SymmetricElliptic and Rotated use (A, B); TwoHalves uses (A1, B1, A2, B2).
 * h is the lens thickness, d its half-width and L the cylinder length.
 */
struct LensGeometry {
    LensVariant variant = LensVariant::SymmetricElliptic;
    double A = 0.0;
    double B = 0.0;
    double A1 = 0.0;
    double B1 = 0.0;
    double A2 = 0.0;
    double B2 = 0.0;
    double phi = 0.0;  // rad, Rotated only
    double h = 0.0;
    double d = 0.0;
    double L = 0.0;

    static LensGeometry symmetric(double A, double B, double h, double d, double L);
    static LensGeometry circular(double R, double h, double d, double L) {
        return symmetric(R, R, h, d, L);
    }
    static LensGeometry twoHalves(double A1, double B1, double A2, double B2, double h,
                                  double d, double L);
    static LensGeometry rotated(double A, double B, double phi, double h, double d, double L);

    /// Half-width of an elliptic section of thickness h: x(a + h) of the lens profile.
    static double halfWidthForThickness(double A, double B, double h);

    /// The combination A/sqrt(B) (or its two-halves / rotated generalisation)
    /// that multiplies every PFA result for this lens, in m^(1/2).
    double pfaShapeFactor() const;

    /// Smallest curvature length the PFA small parameter is measured against.
    double referenceLength() const;
};

/// Closest lens-plate separation a (m) and temperature T (K). T == 0 selects
/// the zero-temperature mode.
struct Environment {
    double a = 0.0;
    double T = 0.0;
};

struct MatsubaraPoint {
    int l = 0;
    double xi = 0.0;    // rad/s
    double zeta = 0.0;  // 2 a xi / c
};

MatsubaraPoint matsubaraPoint(int l, double a, double T);

/// Spacing of the dimensionless Matsubara frequencies, zeta_{l+1} - zeta_l.
double matsubaraSpacing(double a, double T);

struct ValidityIssue {
    enum class Severity { Warning, Error };
    Severity severity;
    std::string message;
};

struct ValidityReport {
    std::vector<ValidityIssue> issues;
    double aOverB = 0.0;
    double aOverH = 0.0;
    double pfaErrorEstimate = 0.0;  // 0.3 a / B, fractional

    bool ok() const;
    std::vector<std::string> warnings() const;
    std::vector<std::string> errors() const;
};

/// Soft PFA validity bound on a/B and a/h.
inline constexpr double kPfaWarnRatio = 0.1;

ValidityReport validateGeometry(const LensGeometry& geom, const Environment& env);

/// Throws DomainError listing every hard violation in the report.
void requireValid(const ValidityReport& report);

}  // namespace casimir
