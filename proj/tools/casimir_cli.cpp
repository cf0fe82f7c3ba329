#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "casimir/cli/run.hpp"
#include "casimir/errors.hpp"

using namespace casimir;
using namespace casimir::cli;

int main(int argc, char** argv) {
    CLI::App app{"Casimir and electrostatic forces between a cylindrical lens and a plate"};
    std::string configPath;
    std::string outputPath;
    std::string format;
    double tolerance = 0.0;
    int threads = 1;
    bool quiet = false;
    app.add_option("--config", configPath, "run configuration file")->required();
    app.add_option("--output", outputPath, "output file (default: stdout or output.path)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tolerance", tolerance, "relative tolerance override")
        ->check(CLI::Range(1e-13, 0.5));
    app.add_option("--threads", threads, "worker threads for sweep points")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "suppress warnings");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    RunConfig cfg;
    try {
        cfg = loadConfig(configPath);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kParseError;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kDomainError;
    }
    if (!format.empty()) cfg.format = format;
    if (!outputPath.empty()) cfg.outputPath = outputPath;
    if (tolerance > 0.0) {
        cfg.quadrature.relTol = tolerance;
        for (auto& [k, v] : cfg.resolved)
            if (k == "quadrature.rel_tol") v = std::to_string(tolerance);
    }
    for (auto& [k, v] : cfg.resolved)
        if (k == "output.format") v = cfg.format;

    RunOutcome outcome;
    try {
        outcome = runCommand(cfg, threads);
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kDomainError;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kConvergenceError;
    }
    for (const auto& d : outcome.diagnostics)
        if (!quiet || d.rfind("warning", 0) != 0) std::cerr << d << '\n';

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (cfg.outputPath) {
        file.open(*cfg.outputPath);
        if (!file) {
            std::cerr << "cannot write " << *cfg.outputPath << '\n';
            return kUsage;
        }
        out = &file;
    }
    if (cfg.format == "json") writeJson(*out, outcome.table);
    else writeCsv(*out, outcome.table);
    return outcome.allConverged ? kOk : kConvergenceError;
}
