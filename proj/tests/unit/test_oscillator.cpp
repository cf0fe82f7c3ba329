#include <doctest.h>

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/oscillator.hpp"

using namespace casimir;

namespace {
constexpr double um = 1e-6;
constexpr double nm = 1e-9;
const auto kLens = LensGeometry::circular(100 * um, 50 * um, 80 * um, 1e-3);
const Environment kEnv{300 * nm, 300};
OscillatorParams osc(double Az, double C = 1e3) { return {2 * std::numbers::pi * 700, C, Az, {}, {}}; }
double rel(double x, double ref) { return std::abs(x / ref - 1.0); }
}  // namespace

TEST_CASE("oscillator parameters") {
    auto p = OscillatorParams::fromLeverArm(4000.0, 5e-4, 2.5e-10, 10 * nm);
    CHECK(p.C == 5e-4 * 5e-4 / 2.5e-10);
    CHECK_NOTHROW(p.validate(kEnv.a));
    CHECK_THROWS_AS(osc(kEnv.a).validate(kEnv.a), DomainError);
    CHECK_THROWS_AS(osc(2 * kEnv.a).validate(kEnv.a), DomainError);
    CHECK_THROWS_AS(osc(10 * nm, -1.0).validate(kEnv.a), DomainError);
    CHECK_THROWS_AS(frequencyShiftNonlinear(kLens, kEnv, IdealMetal{}, osc(kEnv.a)), DomainError);
}

TEST_CASE("nonlinear shift against the direct cycle average") {
    for (const auto& m : {PermittivityModel{IdealMetal{}}, goldPlasma(), goldDrude()})
        for (double r : {0.01, 0.1, 0.3, 0.5}) {
            const auto o = osc(r * kEnv.a);
            const double nl = frequencyShiftNonlinear(kLens, kEnv, m, o).value;
            const double direct = frequencyShiftDirectOracle(kLens, kEnv, m, o).value;
            CHECK(nl < 0.0);
            CHECK(rel(nl, direct) < 1e-6);
        }
}

TEST_CASE("linear limit and curvature of the nonlinearity") {
    for (const auto& m : {PermittivityModel{IdealMetal{}}, goldPlasma()}) {
        const double lin = frequencyShiftLinear(kLens, kEnv, m, osc(1 * nm)).deltaOmegaSquared;
        const double small = frequencyShiftNonlinear(kLens, kEnv, m, osc(1e-3 * kEnv.a)).value;
        CHECK(rel(small, lin) < 1e-3);
        // |nl/lin - 1| ~ K (Az/a)^2 with a stable K.
        const double k1 = (frequencyShiftNonlinear(kLens, kEnv, m, osc(0.01 * kEnv.a)).value / lin - 1.0) / 1e-4;
        const double k2 = (frequencyShiftNonlinear(kLens, kEnv, m, osc(0.005 * kEnv.a)).value / lin - 1.0) / 2.5e-5;
        CHECK(k1 > 0.0);
        CHECK(k1 == doctest::Approx(k2).epsilon(0.01));
        double prev = std::abs(lin);
        for (double r : {0.05, 0.1, 0.2, 0.3, 0.5}) {
            const double nl = std::abs(frequencyShiftNonlinear(kLens, kEnv, m, osc(r * kEnv.a)).value);
            CHECK(nl > prev);
            prev = nl;
        }
    }
}

TEST_CASE("shift scales with the coupling") {
    const double s1 = frequencyShiftNonlinear(kLens, kEnv, goldDrude(), osc(30 * nm, 1e3)).value;
    const double s2 = frequencyShiftNonlinear(kLens, kEnv, goldDrude(), osc(30 * nm, 2e3)).value;
    CHECK(s2 == doctest::Approx(2.0 * s1).epsilon(1e-14));
}

TEST_CASE("linear shift forms") {
    const auto o = osc(10 * nm);
    const auto r = frequencyShiftLinear(kLens, kEnv, goldPlasma(), o);
    CHECK(r.gradient.value > 0.0);
    CHECK(r.deltaOmegaSquared == doctest::Approx(-o.C * r.gradient.value).epsilon(1e-15));
    CHECK(r.omegaR < o.omega0);
    const double x = r.deltaOmegaSquared / (o.omega0 * o.omega0);
    CHECK(std::abs(r.omegaR - r.omegaRFromSquare) <= o.omega0 * x * x);
    auto none = kLens;
    none.L = 1e-30;  // practically no force
    const auto z = frequencyShiftLinear(none, kEnv, goldPlasma(), o);
    CHECK(z.omegaR == doctest::Approx(o.omega0).epsilon(1e-15));
}

TEST_CASE("variants") {
    const double h = 40 * um, d = 60 * um;
    const auto sym = LensGeometry::symmetric(120 * um, 100 * um, h, d, 1e-3);
    const auto eq = LensGeometry::twoHalves(120 * um, 100 * um, 120 * um, 100 * um, h, d, 1e-3);
    const auto r0 = LensGeometry::rotated(120 * um, 100 * um, 0.0, h, d, 1e-3);
    const auto r = LensGeometry::rotated(120 * um, 100 * um, 0.4, h, d, 1e-3);
    const auto mixed = LensGeometry::twoHalves(120 * um, 100 * um, 90 * um, 60 * um, h, d, 1e-3);
    const auto s2 = LensGeometry::symmetric(90 * um, 60 * um, h, d, 1e-3);
    const auto o = osc(60 * nm);
    const auto m = goldPlasma();
    const double base = frequencyShiftNonlinear(sym, kEnv, m, o).value;
    CHECK(rel(frequencyShiftForVariant(eq, kEnv, m, o).value, base) < 1e-15);
    CHECK(frequencyShiftForVariant(r0, kEnv, m, o).value == base);
    CHECK(rel(frequencyShiftForVariant(r, kEnv, m, o).value / base, rotationFactor(120 * um, 100 * um, 0.4).G) < 1e-14);
    const double mean = 0.5 * (base + frequencyShiftNonlinear(s2, kEnv, m, o).value);
    CHECK(rel(frequencyShiftForVariant(mixed, kEnv, m, o).value, mean) < 1e-13);
    CHECK_THROWS_AS(frequencyShiftForVariant(sym, kEnv, m, o), DomainError);
}

TEST_CASE("trivial forces through the direct oracle") {
    // A linear F(a) keeps only the first harmonic: shift = -C * slope.
    // Checked through the engine with the ideal-metal closed form differentiated twice numerically.
    const auto o = osc(1e-4 * kEnv.a);
    const double direct = frequencyShiftDirectOracle(kLens, kEnv, IdealMetal{}, o).value;
    const double lin = frequencyShiftLinear(kLens, kEnv, IdealMetal{}, o).deltaOmegaSquared;
    CHECK(rel(direct, lin) < 1e-6);
}

TEST_CASE("zero-temperature nonlinear shift") {
    const auto o = osc(0.2 * kEnv.a);
    const Environment env0{kEnv.a, 0.0};
    auto r = frequencyShiftNonlinear(kLens, env0, IdealMetal{}, o);
    CHECK((r.mode == SumMode::ZeroT));
    CHECK(rel(r.value, frequencyShiftDirectOracle(kLens, env0, IdealMetal{}, o).value) < 1e-6);
}
