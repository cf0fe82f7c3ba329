#pragma once

// CODATA 2018 values, SI units.
namespace casimir {

struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;       // J s
    static constexpr double c = 299792458.0;              // m/s
    static constexpr double kB = 1.380649e-23;            // J/K
    static constexpr double eps0 = 8.8541878128e-12;      // F/m
    static constexpr double elementaryCharge = 1.602176634e-19;  // C
};

static_assert(PhysicalConstants::hbar > 0 && PhysicalConstants::c > 0 &&
              PhysicalConstants::kB > 0 && PhysicalConstants::eps0 > 0);

/// Converts a photon energy in eV to an angular frequency in rad/s.
constexpr double eVToRadPerSecond(double eV) {
    return eV * PhysicalConstants::elementaryCharge / PhysicalConstants::hbar;
}

}  // namespace casimir
