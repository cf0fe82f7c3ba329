#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/special_functions.hpp"

using namespace casimir;

namespace {

// Plain summation in long double, used as a reference away from z = 1.
long double bruteLi(double s, double z) {
    long double sum = 0.0L;
    long double zn = 1.0L;
    for (int n = 1; n < 20000; ++n) {
        zn *= z;
        sum += zn / std::pow(static_cast<long double>(n), static_cast<long double>(s));
        if (std::fabs(zn) < 1e-30L) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("polylog reference values") {
    CHECK(polylog(0.5, 0.0) == 0.0);
    CHECK(polylog(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // High-precision value 0.806126723042852
    CHECK(polylog(0.5, 0.5) == doctest::Approx(0.806126723042852).epsilon(1e-12));
    CHECK(polylog(2.0, 1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
    for (double s : {0.5, -0.5, 2.0, 3.0})
        for (double z : {-0.7, 0.1, 0.5, 0.9})
            CHECK(polylog(s, z) == doctest::Approx(static_cast<double>(bruteLi(s, z))).epsilon(1e-12));
}

TEST_CASE("Li_{-1/2} near z = 1 follows Gamma(3/2) v^{-3/2}") {
    // 50-digit references
    CHECK(polylogExp(-0.5, 1e-2) == doctest::Approx(886.01929450490454).epsilon(1e-9));
    CHECK(polylogExp(-0.5, 1e-3) == doctest::Approx(28024.748221254126).epsilon(1e-9));
    const double gamma32 = std::sqrt(std::numbers::pi) / 2;
    for (double v : {1e-2, 1e-3}) {
        const double asym = gamma32 * std::pow(v, -1.5);
        CHECK(std::abs(polylogExp(-0.5, v) / asym - 1.0) < 3e-4);
    }
}

TEST_CASE("polylog and polylogExp agree across the series switch") {
    for (double s : {0.5, -0.5})
        for (double mu : {0.2, 0.999, 1.0, 1.001, 3.0})
            CHECK(polylogExp(s, mu) == doctest::Approx(polylog(s, std::exp(-mu))).epsilon(1e-12));
}

TEST_CASE("polylog domain and convergence errors") {
    CHECK_THROWS_AS(polylog(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(polylog(1.0, -1.5), DomainError);
    CHECK_THROWS_AS(polylogExp(0.5, -0.1), DomainError);
    CHECK(polylogExp(0.5, INFINITY) == 0.0);
    SeriesControl tight{1e-15, 3};
    try {
        polylog(3.0, 0.9, tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.partialValue() > 0.9);
    }
}

TEST_CASE("polylog ladder z dLi_s/dz = Li_{s-1}") {
    for (double s : {0.5, 1.5, 2.0})
        for (double z : {0.1, 0.5, 0.9}) {
            const double h = 1e-5 * z;
            const double d = (polylog(s, z + h) - polylog(s, z - h)) / (2 * h);
            CHECK(z * d == doctest::Approx(polylog(s - 1.0, z)).epsilon(1e-6));
        }
}

TEST_CASE("polylog is increasing in z") {
    for (double s : {0.5, -0.5}) {
        double prev = -1.0;
        for (int i = 0; i < 200; ++i) {
            const double val = polylog(s, i / 200.0);
            CHECK(val > prev);
            prev = val;
        }
    }
}

TEST_CASE("besselI1") {
    CHECK(besselI1(0.0) == 0.0);
    CHECK(besselI1(1.0) == doctest::Approx(0.565159103992485).epsilon(1e-13));
    CHECK(besselI1(1e-6) / 1e-6 == doctest::Approx(0.5).epsilon(1e-11));
    for (double z : {0.01, 0.3, 1.0, 5.0, 20.0, 29.9, 30.1, 60.0, 300.0})
        CHECK(besselI1(z) == doctest::Approx(boost::math::cyl_bessel_i(1, z)).epsilon(1e-12));
    for (double z : {0.01, 1.0, 29.0, 31.0, 100.0, 1e4, 1e6}) {
        const double ref = z < 700 ? boost::math::cyl_bessel_i(1, z) * std::exp(-z) : 1.0 / std::sqrt(2 * std::numbers::pi * z) * (1 - 3.0 / (8 * z));
        CHECK(besselI1Scaled(z) == doctest::Approx(ref).epsilon(z < 700 ? 1e-12 : 1e-8));
    }
    CHECK(std::isfinite(besselI1Scaled(1e300)));
    for (double z = 0.05; z < 10; z += 0.05) CHECK(besselI1(z) >= z / 2);
    // Term-by-term match of the defining series for z <= 1.
    for (double z : {0.25, 0.5, 1.0}) {
        const double series = z / 2 + z * z * z / 16 + std::pow(z, 5) / 384 + std::pow(z, 7) / 18432;
        CHECK(std::abs(besselI1(z) - series) < std::pow(z / 2, 9) / 2880 * 1.01);
    }
}

TEST_CASE("Gaussian half integral") {
    CHECK(gaussHalfIntegral() == doctest::Approx(1.7724538509055159).epsilon(1e-16));
    // t = u^2 removes the endpoint singularity: integral_0^inf 2 e^{-u^2} du
    auto I = integrateAdaptive([](double u) { return 2.0 * std::exp(-u * u); }, 0.0, 40.0, 0.0, 1e-13);
    CHECK(std::abs(I.value - gaussHalfIntegral()) < 1e-10);
}

TEST_CASE("Hurwitz tail") {
    // sum_{n>=1} n^{-3} = zeta(3)
    CHECK(hurwitzZetaTail(3.0, 1) == doctest::Approx(1.2020569031595942).epsilon(1e-14));
    double direct = 0.0;
    for (int n = 300; n < 2000000; ++n) direct += std::pow(n, -3.0);
    CHECK(hurwitzZetaTail(3.0, 300) == doctest::Approx(direct).epsilon(1e-9));
    CHECK_THROWS_AS(hurwitzZetaTail(1.0, 4), DomainError);
}

TEST_CASE("quadrature propagates integrand exceptions") {
    CHECK_THROWS_AS(integrateAdaptive([](double) -> double { throw DomainError("x"); }, 0, 1, 0, 1e-8),
                    DomainError);
}
