#include "casimir/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::cli {

std::string toString(Command c) {
    switch (c) {
        case Command::Force: return "force";
        case Command::Gradient: return "gradient";
        case Command::EField: return "efield";
        case Command::FreqShift: return "freq-shift";
        case Command::RatioSweep: return "ratio-sweep";
    }
    return "unknown";
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        out[i] = logSpacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                            : start + t * (stop - start);
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string formatDouble(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Entry {
    std::string value;
    int line = 0;
};

class Sections {
public:
    Sections(std::istream& in, std::string source) : source_(std::move(source)) {
        static const std::set<std::string> known = {"run",     "geometry", "material",
                                                    "environment", "oscillator", "bias",
                                                    "sweep",   "ratio",    "output",
                                                    "quadrature"};
        std::string line;
        std::string section = "run";
        int lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(lineNo, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                if (!known.count(section)) fail(lineNo, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(lineNo, "expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(lineNo, "empty key");
            if (value.empty()) fail(lineNo, "empty value for '" + key + "'");
            const std::string full = section + "." + key;
            if (entries_.count(full)) fail(lineNo, "duplicate key '" + full + "'");
            entries_[full] = {value, lineNo};
        }
    }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        std::ostringstream os;
        os << source_ << ":" << line << ": " << msg;
        throw ConfigError(os.str());
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::optional<std::string> text(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        used_.insert(key);
        return it->second.value;
    }

    std::optional<double> number(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        double x = 0.0;
        const char* b = t->data();
        const char* e = b + t->size();
        auto [p, ec] = std::from_chars(b, e, x);
        if (ec != std::errc() || p != e || !std::isfinite(x))
            fail(entries_.at(key).line, "'" + key + "' is not a finite number: " + *t);
        return x;
    }

    std::optional<long> integer(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        long x = 0;
        const char* b = t->data();
        const char* e = b + t->size();
        auto [p, ec] = std::from_chars(b, e, x);
        if (ec != std::errc() || p != e)
            fail(entries_.at(key).line, "'" + key + "' is not an integer: " + *t);
        return x;
    }

    std::optional<bool> boolean(const std::string& key) {
        auto t = text(key);
        if (!t) return std::nullopt;
        if (*t == "true" || *t == "yes" || *t == "1") return true;
        if (*t == "false" || *t == "no" || *t == "0") return false;
        fail(entries_.at(key).line, "'" + key + "' must be true or false");
    }

    double required(const std::string& key) {
        auto x = number(key);
        if (!x) throw ConfigError(source_ + ": missing required key '" + key + "'");
        return *x;
    }

    int lineOf(const std::string& key) const { return entries_.at(key).line; }

    void rejectUnused() const {
        for (const auto& [k, e] : entries_)
            if (!used_.count(k)) fail(e.line, "unknown or unused key '" + k + "'");
    }

private:
    std::string source_;
    std::map<std::string, Entry> entries_;
    std::set<std::string> used_;
};

std::vector<double> parseList(Sections& s, const std::string& key) {
    std::vector<double> out;
    auto t = s.text(key);
    if (!t) return out;
    std::stringstream ss(*t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        double x = 0.0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
        if (item.empty() || ec != std::errc() || p != item.data() + item.size())
            s.fail(s.lineOf(key), "'" + key + "' must be a comma-separated list of numbers");
        out.push_back(x);
    }
    return out;
}

// Model frequencies may be given in eV (omega_p_eV) or rad/s (omega_p), not both.
double frequency(Sections& s, const std::string& base, double defaultEV) {
    const auto ev = s.number("material." + base + "_eV");
    const auto rad = s.number("material." + base);
    if (ev && rad)
        s.fail(s.lineOf("material." + base), "give either " + base + " or " + base + "_eV");
    if (rad) return *rad;
    return eVToRadPerSecond(ev.value_or(defaultEV));
}

}  // namespace

RunConfig parseConfig(std::istream& in, const std::filesystem::path& baseDir,
                      const std::string& sourceName) {
    Sections s(in, sourceName);
    RunConfig cfg;
    auto& res = cfg.resolved;
    auto put = [&res](const std::string& k, const std::string& v) { res.emplace_back(k, v); };
    auto putNum = [&](const std::string& k, double v) { put(k, formatDouble(v)); };

    // [run]
    const std::string cmd = s.text("run.command").value_or("");
    if (cmd == "force") cfg.command = Command::Force;
    else if (cmd == "gradient") cfg.command = Command::Gradient;
    else if (cmd == "efield") cfg.command = Command::EField;
    else if (cmd == "freq-shift") cfg.command = Command::FreqShift;
    else if (cmd == "ratio-sweep") cfg.command = Command::RatioSweep;
    else if (cmd.empty()) throw ConfigError(sourceName + ": missing run.command");
    else s.fail(s.lineOf("run.command"), "unknown command '" + cmd + "'");
    put("run.command", cmd);

    // [quadrature]
    auto& q = cfg.quadrature;
    q.relTol = s.number("quadrature.rel_tol").value_or(q.relTol);
    q.lMax = s.integer("quadrature.l_max").value_or(q.lMax);
    q.nMax = s.integer("quadrature.n_max").value_or(q.nMax);
    q.vSpan = s.number("quadrature.v_span").value_or(q.vSpan);
    q.nDirect = s.integer("quadrature.n_direct").value_or(q.nDirect);

    // [output]
    cfg.format = s.text("output.format").value_or("csv");
    if (cfg.format != "csv" && cfg.format != "json")
        s.fail(s.lineOf("output.format"), "output.format must be csv or json");
    cfg.outputPath = s.text("output.path");
    cfg.thermalCorrection = s.boolean("output.thermal_correction").value_or(false);

    // [sweep]
    if (s.has("sweep.variable")) {
        SweepSpec sw;
        sw.variable = *s.text("sweep.variable");
        static const std::set<std::string> vars = {"a", "T", "phi", "Az", "V"};
        if (!vars.count(sw.variable))
            s.fail(s.lineOf("sweep.variable"), "sweep variable must be one of a, T, phi, Az, V");
        sw.start = s.required("sweep.start");
        sw.stop = s.required("sweep.stop");
        sw.count = static_cast<int>(s.integer("sweep.count").value_or(11));
        const std::string spacing = s.text("sweep.spacing").value_or("linear");
        if (spacing != "linear" && spacing != "log")
            s.fail(s.lineOf("sweep.spacing"), "sweep.spacing must be linear or log");
        sw.logSpacing = spacing == "log";
        if (!(sw.start < sw.stop)) s.fail(s.lineOf("sweep.stop"), "sweep requires start < stop");
        if (sw.count < 2) s.fail(s.lineOf("sweep.count"), "sweep.count must be >= 2");
        if (sw.logSpacing && !(sw.start > 0.0))
            s.fail(s.lineOf("sweep.start"), "log spacing requires start > 0");
        cfg.sweep = sw;
    } else {
        for (const char* k : {"sweep.start", "sweep.stop", "sweep.count", "sweep.spacing"})
            if (s.has(k)) s.fail(s.lineOf(k), "sweep block needs sweep.variable");
    }

    if (cfg.command == Command::RatioSweep) {
        cfg.ratios = parseList(s, "ratio.values");
        if (cfg.ratios.empty()) cfg.ratios = {1.1, 1.2, 1.3, 1.4};
        for (double r : cfg.ratios)
            if (!(r > 0.0)) throw DomainError("ratio.values must be positive");
        if (!cfg.sweep) cfg.sweep = SweepSpec{"phi", 0.0, std::numbers::pi / 2, 91, false};
        if (cfg.sweep->variable != "phi") throw DomainError("ratio-sweep sweeps phi only");
        std::string list;
        for (double r : cfg.ratios) list += (list.empty() ? "" : ",") + formatDouble(r);
        put("ratio.values", list);
    } else {
        // [geometry]
        const std::string variant = s.text("geometry.variant").value_or("symmetric");
        auto& g = cfg.geometry;
        g.L = s.required("geometry.L");
        if (variant == "symmetric" || variant == "rotated") {
            g.A = s.required("geometry.A");
            g.B = s.required("geometry.B");
            g.variant = variant == "rotated" ? LensVariant::Rotated : LensVariant::SymmetricElliptic;
            g.phi = s.number("geometry.phi").value_or(0.0);
            g.h = s.number("geometry.h").value_or(g.B);
            g.d = s.number("geometry.d").value_or(
                g.A > 0.0 && g.B > 0.0 && g.h > 0.0 ? LensGeometry::halfWidthForThickness(g.A, g.B, g.h)
                                                    : 0.0);
            if (variant == "symmetric" && s.has("geometry.phi"))
                s.fail(s.lineOf("geometry.phi"), "phi applies to the rotated variant only");
        } else if (variant == "two-halves") {
            g.variant = LensVariant::TwoHalves;
            g.A1 = s.required("geometry.A1");
            g.B1 = s.required("geometry.B1");
            g.A2 = s.required("geometry.A2");
            g.B2 = s.required("geometry.B2");
            g.h = s.number("geometry.h").value_or(std::min(g.B1, g.B2));
            double dDefault = 0.0;
            if (g.A1 > 0 && g.B1 > 0 && g.A2 > 0 && g.B2 > 0 && g.h > 0)
                dDefault = std::min(LensGeometry::halfWidthForThickness(g.A1, g.B1, g.h),
                                    LensGeometry::halfWidthForThickness(g.A2, g.B2, g.h));
            g.d = s.number("geometry.d").value_or(dDefault);
        } else {
            s.fail(s.lineOf("geometry.variant"),
                   "geometry.variant must be symmetric, two-halves or rotated");
        }
        put("geometry.variant", variant);
        if (g.variant == LensVariant::TwoHalves) {
            putNum("geometry.A1", g.A1);
            putNum("geometry.B1", g.B1);
            putNum("geometry.A2", g.A2);
            putNum("geometry.B2", g.B2);
        } else {
            putNum("geometry.A", g.A);
            putNum("geometry.B", g.B);
            if (g.variant == LensVariant::Rotated) putNum("geometry.phi", g.phi);
        }
        putNum("geometry.h", g.h);
        putNum("geometry.d", g.d);
        putNum("geometry.L", g.L);

        // [environment]
        // A swept quantity need not be given separately; it starts at sweep.start.
        const auto sweptStart = [&](const char* var) -> std::optional<double> {
            if (cfg.sweep && cfg.sweep->variable == var) return cfg.sweep->start;
            return std::nullopt;
        };
        if (auto a0 = sweptStart("a"); a0 && !s.has("environment.a"))
            cfg.env.a = *a0;
        else
            cfg.env.a = s.required("environment.a");
        cfg.env.T = s.number("environment.T").value_or(300.0);
        putNum("environment.a", cfg.env.a);
        putNum("environment.T", cfg.env.T);

        // [material]
        if (cfg.command != Command::EField) {
            const std::string model = s.text("material.model").value_or("ideal");
            if (model == "ideal") {
                cfg.material = IdealMetal{};
            } else if (model == "plasma") {
                cfg.material = PlasmaModel{frequency(s, "omega_p", kGoldPlasmaEnergyEV)};
            } else if (model == "drude") {
                const double wp = frequency(s, "omega_p", kGoldPlasmaEnergyEV);
                cfg.material = DrudeModel{wp, frequency(s, "gamma", kGoldRelaxationEnergyEV)};
            } else if (model == "tabulated") {
                auto path = s.text("material.table");
                if (!path) throw ConfigError(sourceName + ": tabulated model needs material.table");
                std::filesystem::path p(*path);
                if (p.is_relative()) p = baseDir / p;
                cfg.material = loadTabulatedPermittivity(p);
                put("material.table", p.string());
            } else {
                s.fail(s.lineOf("material.model"), "unknown material model '" + model + "'");
            }
            validateModel(cfg.material);
            put("material.model", model);
            put("material.description", describe(cfg.material));
        }

        // [bias]
        if (cfg.command == Command::EField) {
            cfg.bias.V = s.number("bias.V").value_or(0.0);
            cfg.bias.V0 = s.number("bias.V0").value_or(0.0);
            putNum("bias.V", cfg.bias.V);
            putNum("bias.V0", cfg.bias.V0);
        }

        // [oscillator]
        if (cfg.command == Command::FreqShift) {
            const double omega0 = s.required("oscillator.omega0");
            const auto Az0 = sweptStart("Az");
            const double Az = Az0 && !s.has("oscillator.Az") ? *Az0 : s.required("oscillator.Az");
            const auto C = s.number("oscillator.C");
            const auto b = s.number("oscillator.b");
            const auto I = s.number("oscillator.I");
            if (C && (b || I)) throw ConfigError(sourceName + ": give either oscillator.C or b and I");
            if (C) {
                cfg.oscillator = OscillatorParams{omega0, *C, Az, std::nullopt, std::nullopt};
            } else if (b && I) {
                cfg.oscillator = OscillatorParams::fromLeverArm(omega0, *b, *I, Az);
            } else {
                throw ConfigError(sourceName + ": oscillator needs C, or both b and I");
            }
            putNum("oscillator.omega0", omega0);
            putNum("oscillator.C", cfg.oscillator->C);
            putNum("oscillator.Az", Az);
        }
    }

    if (cfg.sweep) {
        put("sweep.variable", cfg.sweep->variable);
        putNum("sweep.start", cfg.sweep->start);
        putNum("sweep.stop", cfg.sweep->stop);
        put("sweep.count", std::to_string(cfg.sweep->count));
        put("sweep.spacing", cfg.sweep->logSpacing ? "log" : "linear");
        const auto& v = cfg.sweep->variable;
        const bool fits = (v == "a") || (v == "phi" && (cfg.command == Command::RatioSweep ||
                                                        cfg.geometry.variant == LensVariant::Rotated)) ||
                          (v == "T" && cfg.command != Command::EField &&
                           cfg.command != Command::RatioSweep) ||
                          (v == "Az" && cfg.command == Command::FreqShift) ||
                          (v == "V" && cfg.command == Command::EField);
        if (!fits) throw DomainError("sweep variable '" + v + "' does not apply to command " + toString(cfg.command));
    }
    put("output.format", cfg.format);
    if (cfg.thermalCorrection) put("output.thermal_correction", "true");
    putNum("quadrature.rel_tol", q.relTol);
    put("quadrature.l_max", std::to_string(q.lMax));
    put("quadrature.n_max", std::to_string(q.nMax));
    putNum("quadrature.v_span", q.vSpan);
    put("quadrature.n_direct", std::to_string(q.nDirect));

    s.rejectUnused();

    // Physical validation of every sweep point's base state happens at load time.
    q.validate();
    if (cfg.command != Command::RatioSweep) {
        auto checkAt = [&](const Environment& env, const LensGeometry& g) {
            requireValid(validateGeometry(g, env));
            if (cfg.oscillator) cfg.oscillator->validate(env.a);
        };
        if (cfg.sweep) {
            for (double x : cfg.sweep->values()) {
                Environment env = cfg.env;
                LensGeometry g = cfg.geometry;
                auto osc = cfg.oscillator;
                if (cfg.sweep->variable == "a") env.a = x;
                if (cfg.sweep->variable == "T") env.T = x;
                if (cfg.sweep->variable == "phi") g.phi = x;
                if (cfg.sweep->variable == "Az" && osc) osc->Az = x;
                requireValid(validateGeometry(g, env));
                if (osc) osc->validate(env.a);
            }
        } else {
            checkAt(cfg.env, cfg.geometry);
        }
    }
    return cfg;
}

RunConfig loadConfig(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parseConfig(in, path.parent_path(), path.string());
}

}  // namespace casimir::cli
