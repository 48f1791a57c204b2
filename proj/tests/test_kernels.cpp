#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "xyc/kernels.hpp"
#include "xyc/selfcheck.hpp"

using namespace xyc;
using Catch::Approx;

TEST_CASE("closed-form kernels against frozen values") {
    SECTION("disordered: I_1 = (i pi/2)(1/lambda+ - lambda-)") {
        const cplx v = kernel_closed({1.3, 0.5}, 1).value;
        CHECK(v.imag() == Approx(0.692122243).epsilon(1e-8));
        CHECK(std::abs(v.real()) <= 1e-14);
    }
    SECTION("oscillatory: conjugate lambdas still give an imaginary kernel") {
        const cplx v = kernel_closed({0.5, 0.5}, 1).value;
        CHECK(v.imag() == Approx(2.0 * kPi / 3.0).epsilon(1e-13));
        CHECK(std::abs(v.real()) <= 1e-14);
    }
    SECTION("factorizing curve uses the ordered form") {
        const cplx v = kernel_closed({0.6, 0.8}, 2).value;
        CHECK(v.imag() == Approx(4.0 * kPi / 9.0).epsilon(1e-13));
    }
    SECTION("product-state corner: I_n = i pi / n") {
        for (int n : {1, 2, 3, 7})
            CHECK(kernel_closed({0.0, 1.0}, n).value.imag() == Approx(kPi / n).epsilon(1e-13));
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(kernel_closed({1.3, 0.5}, 0), std::invalid_argument);
        CHECK_THROWS_AS(kernel_closed({1.0, 0.5}, 1), CriticalLineError);
    }
}

TEST_CASE("quadrature oracle agrees with the closed forms") {
    // the independent evaluation route: 2i int_0^pi sin(qn) nu_q dq
    for (const ChainParams p : {ChainParams{1.3, 0.5}, {0.5, 0.5}, {0.6, 0.8}, {0.1, 1.4}}) {
        for (int n : {1, 2, 5, 17}) {
            const KernelQuadrature q = kernel_quadrature(p, n, 1e-10);
            const cplx closed = kernel_closed(p, n).value;
            CHECK(std::abs(q.kernel.value - closed) <= 1e-9);
            CHECK(std::abs(q.kernel.value.real()) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(kernel_quadrature({1.3, 0.5}, 0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(kernel_quadrature({1.3, 0.5}, 1, -1.0), std::invalid_argument);
}

TEST_CASE("oracle equivalence across all three regions") {
    SelfCheckRng rng(21);
    const auto run = [&](ChainParams (*sampler)(SelfCheckRng&)) {
        for (int i = 0; i < 3; ++i) {
            const ChainParams p = sampler(rng);
            for (int n = 1; n <= 50; ++n) {
                const cplx closed = kernel_closed(p, n).value;
                const KernelQuadrature q = kernel_quadrature(p, n, 1e-10);
                REQUIRE(std::abs(closed - q.kernel.value) <= 1e-8);
            }
        }
    };
    run(sample::disordered);
    run(sample::ordered_non_oscillatory);
    run(sample::ordered_oscillatory);
}

TEST_CASE("quadrature budget exhaustion carries the best estimate") {
    try {
        integrate_adaptive([](double x) { return std::sin(50.0 * x); }, 0.0, kPi, 1e-14, 3);
        FAIL("expected QuadratureBudgetError");
    } catch (const QuadratureBudgetError& e) {
        CHECK(e.panels == 3);
        CHECK(e.achieved_error > 1e-14);
        CHECK(std::isfinite(e.best_estimate));
    }
}

TEST_CASE("finite-N kernel") {
    const ChainParams ref{0.1, 1.4};
    const ChainParams tgt{1.3, 0.5};

    SECTION("reference = target vanishes identically") {
        for (int n : {1, 3, 9}) CHECK(kernel_finite(ref, ref, n, 1001) == cplx(0.0, 0.0));
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(kernel_finite(ref, tgt, 1, 3), std::invalid_argument);
        CHECK_THROWS_AS(kernel_finite(ref, tgt, 0, 101), std::invalid_argument);
        CHECK_THROWS_AS(kernel_finite(ref, tgt, 101, 101), std::invalid_argument);
    }
    SECTION("limit 2 pi K_n -> Delta I_n, second-order in 1/N") {
        const cplx delta = kernel_closed(tgt, 1).value - kernel_closed(ref, 1).value;
        double err[3];
        const long sizes[3] = {2001, 4001, 8001};
        for (int k = 0; k < 3; ++k)
            err[k] = std::abs(2.0 * kPi * kernel_finite(ref, tgt, 1, sizes[k]) - delta);
        // grid-sum error for a cross-phase pair decreases ~4x per N doubling
        CHECK(err[0] / err[1] == Approx(4.0).margin(0.8));
        CHECK(err[1] / err[2] == Approx(4.0).margin(0.8));
        CHECK(err[2] <= err[0] * double(sizes[0]) / double(sizes[2]));  // within C/N
        CHECK(std::abs(2.0 * kPi * kernel_finite(ref, tgt, 1, 10001) - delta) <= 1e-6);
    }
    SECTION("even N uses the half-integer grid") {
        const cplx delta = kernel_closed(tgt, 2).value - kernel_closed(ref, 2).value;
        CHECK(std::abs(2.0 * kPi * kernel_finite(ref, tgt, 2, 4096) - delta) <= 1e-5);
    }
}

TEST_CASE("amplitude decomposition") {
    SECTION("disordered: {(+1, 1/lambda+), (-1, lambda-)}") {
        const auto d = term_amplitudes({1.3, 0.5});
        REQUIRE(d.terms.size() == 2);
        CHECK(d.terms[0].weight == 1);
        CHECK(d.terms[0].mu.real() == Approx(0.660928057).epsilon(1e-8));
        CHECK(d.terms[1].weight == -1);
        CHECK(d.terms[1].mu.real() == Approx(0.220309352).epsilon(1e-8));
    }
    SECTION("ordered: {(+2, 1), (-1, lambda+), (-1, lambda-)}") {
        const auto d = term_amplitudes({0.5, 0.5});
        REQUIRE(d.terms.size() == 3);
        CHECK(d.terms[0].weight == 2);
        CHECK(d.terms[0].mu == cplx(1.0, 0.0));
        CHECK(d.terms[1].mu == std::conj(d.terms[2].mu));
        CHECK(std::abs(d.terms[1].mu) == Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-13));
    }
    SECTION("product-state corner") {
        const auto d = term_amplitudes({0.0, 1.0});
        REQUIRE(d.terms.size() == 3);
        CHECK(d.terms[0].weight == 2);
        CHECK(d.terms[1].mu == cplx(0.0, 0.0));
        CHECK(d.terms[2].mu == cplx(0.0, 0.0));
    }
    SECTION("every |mu| lies in the closed unit disk") {
        SelfCheckRng rng(31);
        for (int i = 0; i < 300; ++i) {
            const ChainParams p = sample::off_critical(rng);
            for (const AmplitudeTerm& t : term_amplitudes(p).terms)
                CHECK(std::abs(t.mu) <= 1.0 + 1e-12);
        }
    }
    SECTION("reconstruction matches kernel_closed for n = 1..200") {
        SelfCheckRng rng(33);
        for (int i = 0; i < 10; ++i) {
            const ChainParams p = sample::off_critical(rng);
            const auto d = term_amplitudes(p);
            for (int n = 1; n <= 200; ++n) {
                const cplx a = kernel_from_terms(d.terms, n);
                const cplx b = kernel_closed(p, n).value;
                CHECK(std::abs(a - b) <= 1e-12 * std::max(1e-30, std::abs(b)));
            }
        }
    }
}

TEST_CASE("kernel decay envelope") {
    SelfCheckRng rng(37);
    for (int i = 0; i < 10; ++i) {
        const ChainParams p = sample::off_critical(rng);
        const auto d = term_amplitudes(p);
        double weight_sum = 0.0, mu_max = 0.0;
        for (const AmplitudeTerm& t : d.terms) {
            weight_sum += std::abs(double(t.weight));
            mu_max = std::max(mu_max, std::abs(t.mu));
        }
        for (int n = 1; n <= 200; ++n) {
            const double bound =
                kPi / (2.0 * n) * weight_sum * std::pow(mu_max, double(n));
            CHECK(std::abs(kernel_closed(p, n).value) <= bound * (1.0 + 1e-10) + 1e-300);
        }
    }
}

TEST_CASE("merged difference cancels matching terms") {
    const ChainParams a{0.3, 1.2};
    CHECK(merged_difference(a, a).empty());

    // ordered/ordered: the constant pair cancels, four lambdas remain
    const auto terms = merged_difference({0.5, 0.5}, a);
    CHECK(terms.size() == 4);
    for (const AmplitudeTerm& t : terms) CHECK(std::abs(t.mu) < 1.0);

    // cross-phase: one unmatched constant with weight -2 survives
    const auto cross = merged_difference(ChainParams{1.3, 0.5}, a);
    bool found_constant = false;
    for (const AmplitudeTerm& t : cross)
        if (std::abs(t.mu - cplx(1.0, 0.0)) < 1e-13) {
            found_constant = true;
            CHECK(t.weight == -2);
        }
    CHECK(found_constant);
}
