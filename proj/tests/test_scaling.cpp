#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "xyc/scaling.hpp"
#include "xyc/scan.hpp"

using namespace xyc;
using Catch::Approx;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
    return out;
}

}  // namespace

TEST_CASE("prediction formulas") {
    // beta = 0: -(pi^2 / 2 gamma) eps ln(eps)
    CHECK(scaling_prediction(0.0, 1.1, 0.01) ==
          Approx(-(kPi * kPi / 2.2) * 0.01 * std::log(0.01)).epsilon(1e-14));
    CHECK(scaling_prediction(0.0, 1.1, 0.01) > 0.0);

    // beta = 1 at eps = 1/e: pi^2/4
    CHECK(scaling_prediction(1.0, 0.7, std::exp(-1.0)) ==
          Approx(kPi * kPi / 4.0).epsilon(1e-14));

    // beta = 1/2: pi^2 / 2^{3/2} * Gamma(-1/2) * eps^{1/2}
    CHECK(scaling_prediction(0.5, 1.0, 0.01) ==
          Approx(kPi * kPi / std::pow(2.0, 1.5) * std::tgamma(-0.5) * 0.1).epsilon(1e-13));
    CHECK(scaling_prediction(0.5, 1.0, 0.01) < 0.0);

    CHECK_THROWS_AS(scaling_prediction(2.0, 1.0, 0.01), std::domain_error);
    CHECK_THROWS_AS(scaling_prediction(-1.0, 1.0, 0.01), std::domain_error);
    CHECK_THROWS_AS(scaling_prediction(0.0, 1.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(scaling_prediction(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("probe validation") {
    CHECK_THROWS_AS(ScalingProbe(ChainParams{1.3, 0.5}, 1.1, {0.01}, 0.0),
                    std::invalid_argument);  // disordered reference
    CHECK_THROWS_AS(ScalingProbe(ChainParams{0.1, 1.1}, 1.1, {0.3}, 0.0),
                    std::invalid_argument);  // eps out of range
    CHECK_NOTHROW(ScalingProbe(ChainParams{0.1, 1.1}, 1.1, {0.01, 0.001}, 0.5));
}

TEST_CASE("fit recovers synthetic data generated from its own model") {
    const auto eps = log_grid(1e-4, 1e-2, 10);
    for (double beta : {0.0, 0.5, 1.0}) {
        const ScalingProbe probe(ChainParams{0.1, 1.1}, 1.1, eps, beta);
        std::vector<std::pair<double, double>> samples;
        for (double e : eps)
            samples.emplace_back(e, scaling_prediction(beta, 1.1, e) + 0.37);
        const ScalingFit fit = scaling_fit(probe, samples);
        CHECK(fit.relative_deviation <= 1e-10);
        if (beta == 0.5) CHECK(fit.fitted_exponent == Approx(0.5).margin(0.01));
    }
}

TEST_CASE("fit input validation") {
    const auto eps = log_grid(1e-4, 1e-2, 10);
    const ScalingProbe probe(ChainParams{0.1, 1.1}, 1.1, eps, 1.0);
    std::vector<std::pair<double, double>> few{{1e-4, 1.0}, {1e-2, 2.0}};
    CHECK_THROWS_AS(scaling_fit(probe, few), std::invalid_argument);

    std::vector<std::pair<double, double>> narrow;
    for (int i = 0; i < 10; ++i) narrow.emplace_back(1e-3 + i * 1e-5, double(i));
    CHECK_THROWS_AS(scaling_fit(probe, narrow), std::invalid_argument);

    // two distinct abscissae cannot support the three-column beta = 0 basis
    const ScalingProbe probe0(ChainParams{0.1, 1.1}, 1.1, eps, 0.0);
    std::vector<std::pair<double, double>> degen;
    for (int i = 0; i < 5; ++i) degen.emplace_back(1e-4, 1.0);
    for (int i = 0; i < 5; ++i) degen.emplace_back(1e-2, 2.0);
    CHECK_THROWS_AS(scaling_fit(probe0, degen), std::runtime_error);
}

TEST_CASE("end-to-end smoke: beta = 1 slope from the series engine") {
    const auto eps = log_grid(1e-3, 1e-2, 8);
    const ChainParams ref{0.1, 1.1};
    const ScalingProbe probe(ref, 1.1, eps, 1.0);
    const auto samples = scaling_samples(ref, 1.1, 1.0, eps, 1e-9);
    const ScalingFit fit = scaling_fit(probe, samples);
    // leading-log slope at desk-scale eps; acceptance pins this at 2%
    CHECK(fit.fitted_coefficient == Approx(-kPi * kPi / 4.0).epsilon(0.10));
    CHECK(fit.relative_deviation <= 0.10);
}

TEST_CASE("reference independence, loose smoke") {
    const auto eps = log_grid(1e-3, 1e-2, 8);
    const auto s1 = scaling_samples(ChainParams{0.1, 1.1}, 1.1, 1.0, eps, 1e-9);
    const auto s2 = scaling_samples(ChainParams{0.3, 1.5}, 1.1, 1.0, eps, 1e-9);
    const ScalingProbe p1(ChainParams{0.1, 1.1}, 1.1, eps, 1.0);
    const ScalingProbe p2(ChainParams{0.3, 1.5}, 1.1, eps, 1.0);
    const double a = scaling_fit(p1, s1).fitted_coefficient;
    const double b = scaling_fit(p2, s2).fitted_coefficient;
    CHECK(a == Approx(b).epsilon(0.02));
}
