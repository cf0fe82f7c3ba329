#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/cli/config.hpp"
#include "casimir/cli/run.hpp"
#include "casimir/cli/table.hpp"
#include "casimir/errors.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace {

const std::filesystem::path kGolden = CASIMIR_GOLDEN_DIR;
const std::filesystem::path kData = CASIMIR_TEST_DATA;

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parseConfig(in, kData, "test.cfg");
}

std::string csvOf(const Table& t) {
    std::ostringstream os;
    writeCsv(os, t);
    return os.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<double> splitNumbers(const std::string& line) {
    std::vector<double> v;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stod(cell));
    return v;
}

std::string configError(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

const char* kSeparationHead = R"(command = force
[geometry]
A = 100e-6
B = 100e-6
L = 1e-3
)";

}  // namespace

TEST_CASE("config syntax errors carry the line number") {
    CHECK(configError(std::string(kSeparationHead) + "C = 3\n[environment]\na = 1e-7\n")
              .find("test.cfg:6") != std::string::npos);
    CHECK(configError("command = force\n[geometry\n").find("test.cfg:2") != std::string::npos);
    CHECK(configError("command = force\nnot a key value line\n").find("test.cfg:2") !=
          std::string::npos);
    CHECK(configError("command = teleport\n").find("test.cfg:1") != std::string::npos);
    CHECK(configError("command = force\n[geometry]\nA = 1e-4\nB = abc\nL = 1e-3\n[environment]\na = 1e-7\n")
              .find("test.cfg:4") != std::string::npos);
    CHECK(configError(std::string(kSeparationHead) + "[environment]\na = 1e-7\n[material]\nmodel = glass\n")
              .find("test.cfg:9") != std::string::npos);
    CHECK(configError(std::string(kSeparationHead)).find("environment.a") != std::string::npos);
}

TEST_CASE("sweep block invariants") {
    const std::string base = std::string(kSeparationHead) + "[environment]\na = 1e-7\n[sweep]\n";
    CHECK(configError(base + "variable = a\nstart = 2e-7\nstop = 1e-7\n").find("start < stop") !=
          std::string::npos);
    CHECK(configError(base + "variable = a\nstart = 1e-7\nstop = 2e-7\ncount = 1\n").find("count") !=
          std::string::npos);
    CHECK(configError(base + "variable = L\nstart = 1\nstop = 2\n").find("sweep variable") !=
          std::string::npos);
    CHECK(configError(std::string(kSeparationHead) + "[environment]\na = 1e-7\n[sweep]\nstart = 1\n")
              .find("sweep.variable") != std::string::npos);

    const auto cfg = parse(base + "variable = a\nstart = 1e-7\nstop = 1e-5\ncount = 3\nspacing = log\n");
    const auto v = cfg.sweep->values();
    REQUIRE(v.size() == 3);
    CHECK(v[0] == 1e-7);
    CHECK(v[1] == doctest::Approx(1e-6).epsilon(1e-14));
    CHECK(v[2] == 1e-5);
}

TEST_CASE("physical validation of every sweep point at load time") {
    // a = 0 reached by the sweep
    CHECK_THROWS_AS(parse(std::string(kSeparationHead) +
                          "[environment]\na = 1e-7\n[sweep]\nvariable = a\nstart = -1e-7\nstop = 1e-7\n"),
                    DomainError);
    CHECK_THROWS_AS(parse(std::string(kSeparationHead) + "[environment]\na = 1e-7\nT = -3\n"),
                    DomainError);
    CHECK_THROWS_AS(parse("command = force\n[geometry]\nA = -1e-4\nB = 1e-4\nL = 1e-3\n"
                          "[environment]\na = 1e-7\n"),
                    DomainError);
    // Oscillation amplitude must stay below the separation at every sweep point.
    CHECK_THROWS_AS(parse("command = freq-shift\n[geometry]\nA = 1e-4\nB = 1e-4\nL = 1e-3\n"
                          "[environment]\na = 1e-7\n[oscillator]\nomega0 = 1e3\nC = 1e5\n"
                          "[sweep]\nvariable = Az\nstart = 1e-9\nstop = 2e-7\n"),
                    DomainError);
    CHECK_THROWS_AS(parse(std::string(kSeparationHead) +
                          "[environment]\na = 1e-7\n[sweep]\nvariable = V\nstart = 0\nstop = 1\n"),
                    DomainError);
}

TEST_CASE("tabulated material resolves relative to the config directory") {
    const auto cfg = parse(std::string(kSeparationHead) +
                           "[environment]\na = 1e-7\n[material]\nmodel = tabulated\ntable = two_point.txt\n");
    REQUIRE(std::holds_alternative<TabulatedPermittivity>(cfg.material));
    CHECK(std::get<TabulatedPermittivity>(cfg.material).xi.size() == 2);

    try {
        parse(std::string(kSeparationHead) +
              "[environment]\na = 1e-7\n[material]\nmodel = tabulated\ntable = unsorted.txt\n");
        FAIL("expected rejection");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("unsorted.txt:4") != std::string::npos);
    }
}

TEST_CASE("golden CSV files: header block, columns and values") {
    for (const char* name : {"efield", "force_ideal", "freq_shift", "gradient_rotated", "ratio_sweep"}) {
        CAPTURE(name);
        const auto cfg = loadConfig(kGolden / (std::string(name) + ".cfg"));
        const auto out = lines(csvOf(runCommand(cfg, 2).table));
        std::ifstream in(kGolden / (std::string(name) + ".csv"));
        REQUIRE(in);
        std::stringstream buf;
        buf << in.rdbuf();
        const auto expected = lines(buf.str());
        REQUIRE(out.size() == expected.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            CAPTURE(i);
            if (expected[i].empty() || expected[i][0] == '#' || i == 0 || expected[i - 1][0] == '#') {
                // header comments and the column row must match exactly
                if (expected[i].rfind("# material.table", 0) == 0) continue;
                CHECK(out[i] == expected[i]);
                continue;
            }
            const auto got = splitNumbers(out[i]);
            const auto want = splitNumbers(expected[i]);
            REQUIRE(got.size() == want.size());
            for (std::size_t k = 0; k < got.size(); ++k)
                CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-10));
        }
    }
}

TEST_CASE("rows follow sweep order for any thread count") {
    const auto cfg = loadConfig(kGolden / "force_ideal.cfg");
    const auto one = csvOf(runCommand(cfg, 1).table);
    CHECK(csvOf(runCommand(cfg, 3).table) == one);
    CHECK(csvOf(runCommand(cfg, 8).table) == one);
    CHECK(csvOf(runCommand(cfg, 1).table) == one);
}

TEST_CASE("JSON round trip is bit-exact") {
    auto t = runCommand(loadConfig(kGolden / "freq_shift.cfg")).table;
    t.rows.push_back({0.1, 1.0 / 3.0, 5e-324, -2.2250738585072014e-308, 1.7976931348623157e308, 0.0,
                      -0.0, std::nextafter(1.0, 2.0), 6.02214076e23});
    std::stringstream s;
    writeJson(s, t);
    const auto back = readJson(s);
    CHECK(back.columns == t.columns);
    CHECK(back.config == t.config);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        REQUIRE(back.rows[r].size() == t.rows[r].size());
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            CHECK(std::memcmp(&back.rows[r][c], &t.rows[r][c], sizeof(double)) == 0);
        }
    }
}

TEST_CASE("efield sweep traces a parabola with its vertex at V0") {
    auto cfg = loadConfig(kGolden / "efield.cfg");
    cfg.sweep->count = 9;
    const auto t = runCommand(cfg).table;
    const auto& cols = t.columns;
    const auto iv = std::find(cols.begin(), cols.end(), "V_V") - cols.begin();
    const auto iF = std::find(cols.begin(), cols.end(), "force_pfa_N") - cols.begin();
    // F = k (V - V0)^2 for every row
    const double V0 = cfg.bias.V0;
    const double k = t.rows[0][iF] / std::pow(t.rows[0][iv] - V0, 2);
    for (const auto& row : t.rows)
        CHECK(row[iF] == doctest::Approx(k * std::pow(row[iv] - V0, 2)).epsilon(1e-12));
    CHECK(k < 0.0);
}

TEST_CASE("ratio sweep: G decreasing in phi, ordered by A/B") {
    const auto cfg = loadConfig(kGolden / "ratio_sweep.cfg");
    auto c = cfg;
    c.sweep->count = 61;
    const auto t = runCommand(c).table;
    REQUIRE(t.columns.size() == 5);
    for (std::size_t r = 1; r < t.rows.size(); ++r)
        for (std::size_t k = 1; k < 5; ++k) CHECK(t.rows[r][k] < t.rows[r - 1][k]);
    for (const auto& row : t.rows) {
        if (row[0] == 0.0) continue;
        for (std::size_t k = 2; k < 5; ++k) CHECK(row[k] < row[k - 1]);
    }
}

TEST_CASE("non-converged rows carry partial values and converged = 0") {
    auto cfg = loadConfig(kGolden / "force_ideal.cfg");
    cfg.quadrature.lMax = 3;
    const auto out = runCommand(cfg);
    CHECK_FALSE(out.allConverged);
    const auto& cols = out.table.columns;
    const auto ic = std::find(cols.begin(), cols.end(), "converged") - cols.begin();
    const auto iF = std::find(cols.begin(), cols.end(), "force_N") - cols.begin();
    for (const auto& row : out.table.rows) {
        CHECK(row[ic] == 0.0);
        CHECK(row[iF] < 0.0);
    }
    CHECK_FALSE(out.diagnostics.empty());
}

TEST_CASE("PFA warnings go to diagnostics, never into the table") {
    auto cfg = parse("command = force\n[geometry]\nA = 1e-6\nB = 1e-6\nL = 1e-4\n[environment]\na = 4e-7\n");
    const auto out = runCommand(cfg);
    CHECK_FALSE(out.diagnostics.empty());
    CHECK(out.table.rows.size() == 1);
    CHECK(csvOf(out.table).find("warning") == std::string::npos);
}

#ifdef CASIMIR_CLI_PATH
TEST_CASE("binary exit codes") {
    const std::string cli = CASIMIR_CLI_PATH;
    const auto tmp = std::filesystem::temp_directory_path() / "casimir_cli_exit_test";
    std::filesystem::create_directories(tmp);
    auto write = [&](const char* name, const std::string& text) {
        std::ofstream(tmp / name) << text;
        return (tmp / name).string();
    };
    auto status = [&](const std::string& args) {
        const int s = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    const std::string good = (kGolden / "efield.cfg").string();
    CHECK(status("--config " + good + " --quiet") == kOk);
    CHECK(status("") == kUsage);
    CHECK(status("--config " + good + " --format xml") == kUsage);
    CHECK(status("--config " + write("bad.cfg", "command = force\n[geometry\n")) == kParseError);
    CHECK(status("--config " + (tmp / "missing.cfg").string()) == kParseError);
    CHECK(status("--config " + write("domain.cfg", std::string(kSeparationHead) +
                                                       "[environment]\na = -1e-7\n")) == kDomainError);
    CHECK(status("--config " + write("conv.cfg", std::string(kSeparationHead) +
                                                     "[environment]\na = 2e-7\n[quadrature]\nl_max = 3\n")) ==
          kConvergenceError);

    const auto json = (tmp / "out.json").string();
    REQUIRE(status("--config " + good + " --format json --output " + json + " --quiet") == kOk);
    std::ifstream in(json);
    const auto t = readJson(in);
    CHECK(t.rows.size() == 5);
}
#endif
