#include "casimir/cli/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <thread>

#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

struct Row {
    std::vector<double> values;
    std::vector<std::string> warnings;
    bool converged = true;
    std::string failure;
};

// Point-specific state after applying the sweep variable.
struct Point {
    Environment env;
    LensGeometry geometry;
    BiasState bias;
    std::optional<OscillatorParams> oscillator;
    double phi = 0.0;
};

double finiteOrZero(double x) { return std::isfinite(x) ? x : 0.0; }

std::string label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Evaluates f; a ConvergenceError yields its partial value and marks the row.
double guarded(Row& row, const std::function<double()>& f) {
    try {
        return f();
    } catch (const ConvergenceError& e) {
        row.converged = false;
        row.failure = e.what();
        return finiteOrZero(e.partialValue());
    }
}

void appendWarnings(Row& row, const std::vector<std::string>& w) {
    row.warnings.insert(row.warnings.end(), w.begin(), w.end());
}

std::vector<std::string> columnsFor(const RunConfig& cfg) {
    const bool rotated = cfg.geometry.variant == LensVariant::Rotated;
    std::vector<std::string> c;
    switch (cfg.command) {
        case Command::Force:
        case Command::Gradient: {
            const bool force = cfg.command == Command::Force;
            c = {"a_m", "T_K"};
            if (rotated) c.push_back("phi_rad");
            c.push_back(force ? "force_N" : "gradient_N_per_m");
            c.push_back(force ? "est_abs_error_N" : "est_abs_error_N_per_m");
            c.insert(c.end(), {"terms_used", "zero_T", "converged"});
            if (cfg.thermalCorrection) {
                c.push_back(force ? "force_T0_N" : "gradient_T0_N_per_m");
                c.push_back("thermal_correction");
            }
            break;
        }
        case Command::EField:
            c = {"a_m"};
            if (rotated) c.push_back("phi_rad");
            c.insert(c.end(), {"V_V", "V0_V", "force_pfa_N"});
            if (cfg.geometry.variant == LensVariant::SymmetricElliptic && cfg.geometry.A == cfg.geometry.B)
                c.insert(c.end(), {"force_exact_N", "force_expanded_N"});
            break;
        case Command::FreqShift:
            c = {"a_m", "T_K"};
            if (rotated) c.push_back("phi_rad");
            c.insert(c.end(), {"Az_m", "delta_omega2_nonlinear", "delta_omega2_linear",
                               "omega_r_nonlinear", "omega_r_linear", "est_abs_error", "converged"});
            break;
        case Command::RatioSweep:
            c = {"phi_rad"};
            for (double r : cfg.ratios) c.push_back("G_AB_" + label(r));
            break;
    }
    return c;
}

Row evaluatePoint(const RunConfig& cfg, const Point& p) {
    Row row;
    auto& v = row.values;
    const auto& g = p.geometry;
    const bool rotated = g.variant == LensVariant::Rotated;
    const auto& q = cfg.quadrature;
    switch (cfg.command) {
        case Command::Force:
        case Command::Gradient: {
            const bool force = cfg.command == Command::Force;
            auto eval = [&](const Environment& env) {
                return force ? lensForce(g, env, cfg.material, q) : lensGradient(g, env, cfg.material, q);
            };
            ForceResult r;
            const double value = guarded(row, [&] {
                r = eval(p.env);
                return r.value;
            });
            appendWarnings(row, r.warnings);
            v = {p.env.a, p.env.T};
            if (rotated) v.push_back(g.phi);
            v.insert(v.end(), {value, r.estAbsError, static_cast<double>(r.termsUsed),
                               p.env.T == 0.0 ? 1.0 : 0.0, 0.0});
            const std::size_t convergedIdx = v.size() - 1;
            if (cfg.thermalCorrection) {
                const double zero = guarded(row, [&] { return eval({p.env.a, 0.0}).value; });
                v.push_back(zero);
                v.push_back(value != 0.0 ? relativeThermalCorrection(value, zero) : 0.0);
            }
            v[convergedIdx] = row.converged ? 1.0 : 0.0;
            break;
        }
        case Command::EField: {
            v = {p.env.a};
            if (rotated) v.push_back(g.phi);
            const double pfa = g.variant == LensVariant::SymmetricElliptic
                                   ? pfaElectricForce(g, p.env, p.bias)
                                   : asymmetricElectricForce(g, p.env, p.bias);
            v.insert(v.end(), {p.bias.V, p.bias.V0, pfa});
            if (g.variant == LensVariant::SymmetricElliptic && g.A == g.B) {
                v.push_back(exactCircularElectricForce(g.A, p.env, p.bias, g.L));
                v.push_back(expandedElectricForce(g.A, p.env, p.bias, g.L));
            }
            break;
        }
        case Command::FreqShift: {
            const auto& osc = *p.oscillator;
            ShiftResult nl;
            const double dNl = guarded(row, [&] {
                nl = frequencyShiftNonlinear(g, p.env, cfg.material, osc, q);
                return nl.value;
            });
            appendWarnings(row, nl.warnings);
            LinearShift lin;
            guarded(row, [&] {
                lin = frequencyShiftLinear(g, p.env, cfg.material, osc, q);
                return 0.0;
            });
            const double w2 = osc.omega0 * osc.omega0 + dNl;
            if (!(w2 > 0.0))
                throw DomainError("nonlinear frequency shift exceeds omega0^2; no stable resonance");
            v = {p.env.a, p.env.T};
            if (rotated) v.push_back(g.phi);
            v.insert(v.end(), {osc.Az, dNl, lin.deltaOmegaSquared, std::sqrt(w2), lin.omegaR,
                               nl.estAbsError, row.converged ? 1.0 : 0.0});
            break;
        }
        case Command::RatioSweep: {
            v = {p.phi};
            for (double r : cfg.ratios) v.push_back(rotationFactor(r, 1.0, p.phi).G);
            break;
        }
    }
    return row;
}

Point pointFor(const RunConfig& cfg, std::optional<double> x) {
    Point p{cfg.env, cfg.geometry, cfg.bias, cfg.oscillator, cfg.geometry.phi};
    if (!x) return p;
    const auto& var = cfg.sweep->variable;
    if (var == "a") p.env.a = *x;
    else if (var == "T") p.env.T = *x;
    else if (var == "phi") p.geometry.phi = p.phi = *x;
    else if (var == "Az") p.oscillator->Az = *x;
    else if (var == "V") p.bias.V = *x;
    return p;
}

}  // namespace

RunOutcome runCommand(const RunConfig& cfg, int threads) {
    std::vector<std::optional<double>> xs;
    if (cfg.sweep) {
        for (double x : cfg.sweep->values()) xs.emplace_back(x);
    } else {
        xs.emplace_back(std::nullopt);
    }

    std::vector<Row> rows(xs.size());
    std::vector<std::exception_ptr> errors(xs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) {
            try {
                rows[i] = evaluatePoint(cfg, pointFor(cfg, xs[i]));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(xs.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // Report the first failure in sweep order, independent of scheduling.
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    RunOutcome out;
    out.table.config = cfg.resolved;
    out.table.columns = columnsFor(cfg);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string where = xs[i] ? cfg.sweep->variable + " = " + label(*xs[i]) + ": " : "";
        for (const auto& w : rows[i].warnings)
            if (seen.insert(w).second) out.diagnostics.push_back("warning: " + where + w);
        if (!rows[i].converged) {
            out.allConverged = false;
            out.diagnostics.push_back("not converged: " + where + rows[i].failure);
        }
        out.table.rows.push_back(std::move(rows[i].values));
    }
    return out;
}

}  // namespace casimir::cli
