#pragma once

// Circuit complexity between a reference and a target ground state, with
// penalty factors e^{2nl} n^beta on gates of range n.
//
// Canonical definition (I-based):
//   C(l, beta) = sum_{n>=1} e^{2nl} n^beta |I_n^T - I_n^R|^2.
// Momentum-space quantities:
//   finite:   sum_{q>0 in Gamma} |Delta nu_q|^2   (reported literally)
//   density:  (1/2pi) int_{-pi}^{pi} (Delta nu_q)^2 dq
// Related by finite/N -> density/2 and, via Parseval,
//   sum_{n>=1} |Delta I_n|^2 = pi int_{-pi}^{pi} (Delta nu_q)^2 dq = 2 pi^2 density.
//
// Writing Delta I_n = (i pi / 2n) sum_a w_a mu_a^n over the merged
// decomposition, the sum resums to
//   C = (pi^2/4) sum_{a,b} w_a w_b Li_{2-beta}(mu_a conj(mu_b) e^{2l}),
// which converges iff e^{2l} rho^2 < 1, or e^{2l} rho^2 = 1 with beta < 1,
// where rho = max_a |mu_a|. That radius is exactly l * xi_max = 1.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "xyc/kernels.hpp"
#include "xyc/model.hpp"
#include "xyc/quadrature.hpp"
#include "xyc/special_functions.hpp"

namespace xyc {

// Penalty pair (l, beta): gate range n is weighted by e^{2nl} n^beta.
struct PenaltySpec {
    double l;
    double beta;

    PenaltySpec(double l_, double beta_) : l(l_), beta(beta_) {
        if (!std::isfinite(l) || !std::isfinite(beta))
            throw std::invalid_argument("PenaltySpec: fields must be finite");
        if (l < 0.0) throw std::invalid_argument("PenaltySpec: l must be >= 0");
    }
};

struct StatePair {
    ChainParams reference;
    ChainParams target;
};

enum class ComplexityMethod { series, polylog, momentum_finite, momentum_density };

inline const char* to_string(ComplexityMethod m) {
    switch (m) {
        case ComplexityMethod::series: return "series";
        case ComplexityMethod::polylog: return "polylog";
        case ComplexityMethod::momentum_finite: return "momentum-finite";
        case ComplexityMethod::momentum_density: return "momentum-density";
    }
    return "?";
}

// Either a finite value with an error bound, or an explicit divergence marker
// with the boundary margin ln(e^{2l} rho^2).
struct ComplexityOutcome {
    bool divergent = false;
    double value = 0.0;
    double error_bound = 0.0;
    ComplexityMethod method = ComplexityMethod::series;
    double margin = -std::numeric_limits<double>::infinity();

    static ComplexityOutcome finite(double v, double err, ComplexityMethod m, double margin) {
        return {false, v, err, m, margin};
    }
    static ComplexityOutcome diverged(double margin) {
        return {true, 0.0, 0.0, ComplexityMethod::polylog, margin};
    }
};

struct Classification {
    bool divergent;
    double margin;  // ln(e^{2l} rho^2); -inf when the merged decomposition is empty
};

inline Classification convergence_classify(const StatePair& pair, const PenaltySpec& penalty) {
    const std::vector<AmplitudeTerm> terms = merged_difference(pair.target, pair.reference);
    double rho = 0.0;
    for (const AmplitudeTerm& t : terms) rho = std::max(rho, std::abs(t.mu));
    const double margin = 2.0 * penalty.l + 2.0 * std::log(rho);
    constexpr double kBoundaryTol = 1e-12;
    if (margin > kBoundaryTol) return {true, margin};
    // on the boundary the terms go like n^{beta-2}: summable iff beta < 1
    if (margin >= -kBoundaryTol && penalty.beta >= 1.0) return {true, 0.0};
    return {false, margin};
}

inline double momentum_complexity_finite(const StatePair& pair, long n_sites) {
    if (n_sites < 4)
        throw std::invalid_argument("momentum_complexity_finite: N must be >= 4");
    const long count = n_sites / 2;
    const double offset = (n_sites % 2 == 1) ? 1.0 : 0.5;
    const double step = 2.0 * kPi / double(n_sites);
    double acc = 0.0;
    for (long j = 0; j < count; ++j) {
        const double q = step * (offset + double(j));
        const double d = bogoliubov_angle(pair.target, q) - bogoliubov_angle(pair.reference, q);
        acc += d * d;
    }
    return acc;
}

inline double momentum_complexity_density(const StatePair& pair, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("momentum_complexity_density: tol must be > 0");
    const auto f = [&pair](double q) {
        const double d = bogoliubov_angle(pair.target, q) - bogoliubov_angle(pair.reference, q);
        return d * d;
    };
    // (1/2pi) int_{-pi}^{pi} = (1/pi) int_0^pi by evenness of the integrand
    const QuadratureResult r = integrate_adaptive(f, 0.0, kPi, tol * kPi);
    return r.value / kPi;
}

namespace detail {

// Rigorous bound on sum_{n>K} e^{2nl} n^{beta-2} |S_n|^2 (without the pi^2/4),
// from the envelope |S_n| <= sum_a |w_a| |mu_a|^n. Each (a, b) pair
// contributes a geometric (r < 1) or p-series (r = 1, beta < 1) tail.
inline double series_tail_bound(const std::vector<AmplitudeTerm>& terms, double l,
                                double beta, long k) {
    const double e2l = std::exp(2.0 * l);
    double bound = 0.0;
    for (const AmplitudeTerm& a : terms) {
        for (const AmplitudeTerm& b : terms) {
            const double w = std::abs(double(a.weight) * double(b.weight));
            const double r = std::abs(a.mu) * std::abs(b.mu) * e2l;
            if (r == 0.0) continue;
            double tail;
            if (r >= 1.0 - 1e-15) {
                if (beta >= 1.0) return std::numeric_limits<double>::infinity();
                tail = std::pow(double(k), beta - 1.0) / (1.0 - beta);
            } else if (beta <= 2.0) {
                tail = std::pow(double(k + 1), beta - 2.0) * std::pow(r, double(k + 1)) /
                       (1.0 - r);
            } else {
                const double ratio = r * std::pow(1.0 + 1.0 / double(k + 1), beta - 2.0);
                if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
                tail = std::pow(double(k + 1), beta - 2.0) * std::pow(r, double(k + 1)) /
                       (1.0 - ratio);
            }
            bound += w * tail;
        }
    }
    return bound;
}

}  // namespace detail

// Truncated penalized sum with a rigorous tail majorant as the stopping rule.
// The l-weight is folded into the amplitudes (mu_a e^l), which stays bounded
// whenever the classification says convergent. If max_terms is hit first, the
// result is best-effort with the remaining tail bound as the error.
inline ComplexityOutcome realspace_complexity_series(const StatePair& pair,
                                                     const PenaltySpec& penalty, double tol,
                                                     long max_terms = 5'000'000) {
    if (!(tol > 0.0))
        throw std::invalid_argument("realspace_complexity_series: tol must be > 0");
    const Classification cls = convergence_classify(pair, penalty);
    if (cls.divergent) return ComplexityOutcome::diverged(cls.margin);

    const std::vector<AmplitudeTerm> terms = merged_difference(pair.target, pair.reference);
    if (terms.empty())
        return ComplexityOutcome::finite(0.0, 0.0, ComplexityMethod::series, cls.margin);

    const double el = std::exp(penalty.l);
    std::vector<cplx> scaled, powers;
    scaled.reserve(terms.size());
    powers.assign(terms.size(), cplx(1.0, 0.0));
    for (const AmplitudeTerm& t : terms) scaled.push_back(t.mu * el);

    const double quarter_pi2 = kPi * kPi / 4.0;
    double sum = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    long used = 0;
    for (long n = 1; n <= max_terms; ++n) {
        cplx s(0.0, 0.0);
        for (size_t a = 0; a < terms.size(); ++a) {
            powers[a] *= scaled[a];
            s += double(terms[a].weight) * powers[a];
        }
        sum += std::pow(double(n), penalty.beta - 2.0) * std::norm(s);
        used = n;
        if ((n & 15) == 0 || n == max_terms) {
            tail = quarter_pi2 *
                   detail::series_tail_bound(terms, penalty.l, penalty.beta, n);
            if (tail <= tol) break;
        }
    }
    const double value = quarter_pi2 * sum;
    const double round = 4.0 * value * std::numeric_limits<double>::epsilon() *
                         std::sqrt(double(used));
    return ComplexityOutcome::finite(value, tail + round, ComplexityMethod::series,
                                     cls.margin);
}

// Polylog resummation: C = (pi^2/4) sum_{a,b} w_a w_b Li_{2-beta}(mu_a mu_b* e^{2l}).
// Hermitian pairing makes the double sum real; the residual imaginary part is
// folded into the error bound.
inline ComplexityOutcome realspace_complexity_closed(const StatePair& pair,
                                                     const PenaltySpec& penalty,
                                                     double rel_tol = 1e-10,
                                                     long max_terms = 10'000'000) {
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("realspace_complexity_closed: tol must be > 0");
    const Classification cls = convergence_classify(pair, penalty);
    if (cls.divergent) return ComplexityOutcome::diverged(cls.margin);

    const std::vector<AmplitudeTerm> terms = merged_difference(pair.target, pair.reference);
    const double e2l = std::exp(2.0 * penalty.l);
    const double s = 2.0 - penalty.beta;
    cplx acc(0.0, 0.0);
    double err = 0.0;
    for (const AmplitudeTerm& a : terms) {
        for (const AmplitudeTerm& b : terms) {
            const double w = double(a.weight) * double(b.weight);
            cplx z = a.mu * std::conj(b.mu) * e2l;
            if (std::abs(z) > 1.0 && std::abs(z) <= 1.0 + 1e-12) z /= std::abs(z);
            PolylogResult li;
            try {
                li = polylog(s, z, rel_tol, max_terms);
            } catch (const std::domain_error&) {
                return ComplexityOutcome::diverged(cls.margin);
            }
            acc += w * li.value;
            err += std::abs(w) * li.abs_error;
        }
    }
    const double quarter_pi2 = kPi * kPi / 4.0;
    double value = quarter_pi2 * acc.real();
    const double bound = quarter_pi2 * (err + std::abs(acc.imag()));
    if (value < 0.0 && value >= -bound) value = 0.0;
    return ComplexityOutcome::finite(value, bound, ComplexityMethod::polylog, cls.margin);
}

// Raw truncated sum sum_{n<=K} e^{2nl} n^beta |Delta I_n|^2, without the
// convergence gate. Diagnostic: used to demonstrate that sums classified
// divergent actually grow without bound.
inline double penalized_partial_sum(const StatePair& pair, const PenaltySpec& penalty,
                                    long n_terms) {
    if (n_terms < 1) throw std::invalid_argument("penalized_partial_sum: n_terms >= 1");
    const std::vector<AmplitudeTerm> terms = merged_difference(pair.target, pair.reference);
    if (terms.empty()) return 0.0;
    const double el = std::exp(penalty.l);
    std::vector<cplx> scaled, powers;
    powers.assign(terms.size(), cplx(1.0, 0.0));
    for (const AmplitudeTerm& t : terms) scaled.push_back(t.mu * el);
    double sum = 0.0;
    for (long n = 1; n <= n_terms; ++n) {
        cplx s(0.0, 0.0);
        for (size_t a = 0; a < terms.size(); ++a) {
            powers[a] *= scaled[a];
            s += double(terms[a].weight) * powers[a];
        }
        sum += std::pow(double(n), penalty.beta - 2.0) * std::norm(s);
    }
    return kPi * kPi / 4.0 * sum;
}

}  // namespace xyc
