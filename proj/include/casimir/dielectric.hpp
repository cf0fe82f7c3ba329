#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

struct IdealMetal {};

/// epsilon(i xi) = 1 + omegaP^2 / xi^2
struct PlasmaModel {
    double omegaP;  // rad/s
};

/// epsilon(i xi) = 1 + omegaP^2 / (xi (xi + gamma))
struct DrudeModel {
    double omegaP;  // rad/s
    double gamma;   // rad/s
};

/**
 * Permittivity sampled along the imaginary frequency axis, interpolated
 * linearly in (ln xi, ln eps). An optional static value eps(0) serves the
 * zero-frequency reflection branch; log-log interpolation cannot reach xi = 0.
 */
struct TabulatedPermittivity {
    std::vector<double> xi;   // rad/s, strictly increasing, > 0
    std::vector<double> eps;  // >= 1, non-increasing
    std::optional<double> staticEps;
};

using PermittivityModel = std::variant<IdealMetal, PlasmaModel, DrudeModel, TabulatedPermittivity>;

std::string describe(const PermittivityModel& model);

/// Gold, as used throughout: omega_p = 9.0 eV, gamma = 0.035 eV.
inline constexpr double kGoldPlasmaEnergyEV = 9.0;
inline constexpr double kGoldRelaxationEnergyEV = 0.035;
PermittivityModel goldPlasma();
PermittivityModel goldDrude();

/// Validates model parameters; throws DomainError.
void validateModel(const PermittivityModel& model);

/// epsilon(i xi). Returns +infinity for the ideal metal and for plasma / Drude
/// at xi = 0. Tabulated models throw ExtrapolationError outside their range.
double epsilonAtImaginary(const PermittivityModel& model, double xi);

struct ReflectionPair {
    double rTM = 0.0;
    double rTE = 0.0;
};

/**
 * TM and TE reflection coefficients at dimensionless frequency zeta = 2 a xi / c
 * and dimensionless wave variable v = 2 a q (v >= zeta), for separation a (m).
 * zeta == 0 is handled by dedicated analytic branches per model.
 */
ReflectionPair reflectionCoefficients(const PermittivityModel& model, double zeta, double v,
                                      double a);

/**
 * Reflection coefficients at a fixed Matsubara frequency, evaluated for many v.
 * The permittivity is looked up once. Besides r itself it exposes
 * 1 - rTM and 1 - |rTE| computed without cancellation, which the force kernels
 * need when r^2 e^{-v} approaches 1.
 */
class ReflectionAtFrequency {
public:
    ReflectionAtFrequency(const PermittivityModel& model, double zeta, double a);

    struct Value {
        double rTM;
        double rTE;
        double oneMinusTM;     // 1 - rTM
        double oneMinusAbsTE;  // 1 - |rTE|
    };

    Value at(double v) const;

    double zeta() const { return zeta_; }

    /// ln(rTM^2) and ln(rTE^2); -inf when the coefficient vanishes.
    static double logSquaredTM(const Value& r);
    static double logSquaredTE(const Value& r);

private:
    enum class Branch { Ideal, PlasmaStatic, DrudeStatic, DielectricStatic, Finite };
    Branch branch_;
    double zeta_;
    double eps_ = 0.0;         // finite branch
    double epsMinusOne_ = 0.0;
    double p_ = 0.0;           // (eps - 1) zeta^2, or Omega^2 for the plasma static branch
};

/// Two-column text "xi_rad_per_s epsilon"; '#' starts a comment. A row with
/// xi == 0 (first data row only) supplies the static permittivity.
TabulatedPermittivity parseTabulatedPermittivity(std::istream& in,
                                                 const std::string& sourceName = "<stream>");
TabulatedPermittivity loadTabulatedPermittivity(const std::filesystem::path& path);

}  // namespace casimir
