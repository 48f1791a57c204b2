#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "xyc/selfcheck.hpp"
#include "xyc/special_functions.hpp"

using namespace xyc;
using Catch::Approx;

TEST_CASE("polylog reference values") {
    CHECK(polylog(2.0, cplx(1.0, 0.0), 1e-12).value.real() ==
          Approx(kPi * kPi / 6.0).epsilon(1e-12));
    CHECK(polylog(1.0, cplx(0.5, 0.0), 1e-13).value.real() ==
          Approx(std::log(2.0)).epsilon(1e-12));

    // brute-force partial sum as the independent oracle
    const double s = 1.5;
    const cplx z(0.9, 0.0);
    long double brute = 0.0L;
    long double zk = 1.0L;
    for (long k = 1; k <= 1'000'000; ++k) {
        zk *= 0.9L;
        brute += zk / std::pow((long double)k, (long double)s);
    }
    CHECK(polylog(s, z, 1e-12).value.real() == Approx(double(brute)).epsilon(1e-10));
}

TEST_CASE("polylog domain is the closed unit disk, no continuation") {
    CHECK_THROWS_AS(polylog(2.0, cplx(1.2, 0.0), 1e-10), std::domain_error);
    CHECK_THROWS_AS(polylog(2.0, cplx(0.9, 0.9), 1e-10), std::domain_error);
    // on the circle the series only converges for s > 1
    CHECK_THROWS_AS(polylog(1.0, cplx(1.0, 0.0), 1e-10), std::domain_error);
    CHECK_THROWS_AS(polylog(0.5, cplx(0.0, 1.0), 1e-10), std::domain_error);
    CHECK_NOTHROW(polylog(1.5, cplx(0.0, 1.0), 1e-3, 100'000));
    CHECK_THROWS_AS(polylog(2.0, cplx(0.5, 0.0), 0.0), std::invalid_argument);
}

TEST_CASE("polylog geometric reduction at s = 0") {
    SelfCheckRng rng(3);
    for (int i = 0; i < 60; ++i) {
        const cplx z = std::polar(rng.uniform(0.0, 0.9), rng.uniform(0.0, 2 * kPi));
        const cplx got = polylog(0.0, z, 1e-13).value;
        CHECK(std::abs(got - z / (1.0 - z)) <= 1e-12 * std::max(1.0, std::abs(got)));
    }
}

TEST_CASE("polylog duplication identity") {
    SelfCheckRng rng(5);
    for (int i = 0; i < 200; ++i) {
        const double s = rng.uniform(-1.0, 3.0);
        const cplx z = std::polar(rng.uniform(0.0, 0.95), rng.uniform(0.0, 2 * kPi));
        const cplx a = polylog(s, z, 1e-12).value;
        const cplx b = polylog(s, -z, 1e-12).value;
        const cplx rhs = std::pow(2.0, 1.0 - s) * polylog(s, z * z, 1e-12).value;
        const double scale = std::max({std::abs(rhs), 0.01 * (std::abs(a) + std::abs(b)), 1e-30});
        CHECK(std::abs(a + b - rhs) / scale <= 1e-9);
    }
}

TEST_CASE("polylog partial sums increase on (0,1) and the tail bound holds") {
    SelfCheckRng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const double s = rng.uniform(-1.0, 3.0);
        const double z = rng.uniform(0.05, 0.9);
        const PolylogResult r = polylog(s, cplx(z, 0.0), 1e-10);
        REQUIRE(r.converged);
        // partial sums of a positive-term series increase
        double partial = 0.0, prev = 0.0;
        double zk = 1.0;
        for (long k = 1; k <= r.terms; ++k) {
            zk *= z;
            prev = partial;
            partial += zk * std::pow(double(k), -s);
            CHECK(partial >= prev);
        }
        // the reported bound is not violated by the next 100 terms
        double extension = partial;
        for (long k = r.terms + 1; k <= r.terms + 100; ++k) {
            zk *= z;
            extension += zk * std::pow(double(k), -s);
        }
        CHECK(std::abs(extension - r.value.real()) <= r.abs_error * (1.0 + 1e-12));
    }
}

TEST_CASE("polylog term cap yields a flagged best-effort result") {
    const PolylogResult r = polylog(1.0, cplx(0.999999, 0.0), 1e-14, 1000);
    CHECK_FALSE(r.converged);
    CHECK(r.terms == 1000);
    CHECK(r.value.real() > 0.0);
    CHECK(r.abs_error > 0.0);
}

TEST_CASE("polylog query struct mirrors the free function") {
    const PolylogQuery q{1.5, cplx(0.3, 0.4), 1e-11};
    CHECK(polylog(q).value == polylog(1.5, cplx(0.3, 0.4), 1e-11).value);
}

TEST_CASE("zeta values") {
    CHECK(zeta_val(2.0) == Approx(kPi * kPi / 6.0).epsilon(1e-13));
    CHECK(zeta_val(4.0) == Approx(kPi * kPi * kPi * kPi / 90.0).epsilon(1e-13));
    CHECK_THROWS_AS(zeta_val(1.0), std::domain_error);
    CHECK_THROWS_AS(zeta_val(0.5), std::domain_error);

    // brute force with an integral tail correction as the oracle at s = 1.5
    const double s = 1.5;
    long double brute = 0.0L;
    const long K = 10'000'000;
    for (long k = 1; k <= K; ++k) brute += std::pow((long double)k, (long double)-s);
    brute += std::pow((long double)K, (long double)(1.0 - s)) / (s - 1.0) -
             0.5L * std::pow((long double)K, (long double)-s);
    CHECK(zeta_val(s) == Approx(double(brute)).epsilon(1e-12));

#if defined(__cpp_lib_math_special_functions) || defined(__STDCPP_MATH_SPEC_FUNCS__)
    for (double v : {1.25, 1.5, 2.0, 3.0, 7.5})
        CHECK(zeta_val(v) == Approx(std::riemann_zeta(v)).epsilon(1e-12));
#endif
}

TEST_CASE("gamma values") {
    CHECK(gamma_val(1.0) == Approx(1.0).epsilon(1e-14));
    CHECK(gamma_val(0.5) == Approx(std::sqrt(kPi)).epsilon(1e-13));
    CHECK(gamma_val(-0.5) == Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
    CHECK(gamma_val(5.0) == Approx(24.0).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_val(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_val(-3.0), std::domain_error);
}
