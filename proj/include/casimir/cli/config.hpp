#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/electrostatics.hpp"
#include "casimir/engine.hpp"
#include "casimir/geometry.hpp"
#include "casimir/oscillator.hpp"

namespace casimir::cli {

/// Syntax or vocabulary problem in a run configuration (exit status 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Force, Gradient, EField, FreqShift, RatioSweep };

std::string toString(Command c);

struct SweepSpec {
    std::string variable;  // a, T, phi, Az or V
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    bool logSpacing = false;

    std::vector<double> values() const;
};

struct RunConfig {
    Command command = Command::Force;
    LensGeometry geometry;
    PermittivityModel material = IdealMetal{};
    Environment env;
    std::optional<OscillatorParams> oscillator;
    BiasState bias;
    std::optional<SweepSpec> sweep;
    std::vector<double> ratios;  // A/B values for ratio-sweep
    bool thermalCorrection = false;
    std::optional<std::string> outputPath;
    std::string format = "csv";
    QuadratureSpec quadrature;

    /// Every setting after defaults were applied, as "section.key" -> text.
    std::vector<std::pair<std::string, std::string>> resolved;
};

/**
 * Parses the sectioned key = value format. '#' starts a comment; keys before
 * the first section header belong to [run]. Relative table paths resolve
 * against baseDir. Throws ConfigError for syntax problems and DomainError for
 * physically invalid values.
 */
RunConfig parseConfig(std::istream& in, const std::filesystem::path& baseDir,
                      const std::string& sourceName = "<config>");
RunConfig loadConfig(const std::filesystem::path& path);

}  // namespace casimir::cli
