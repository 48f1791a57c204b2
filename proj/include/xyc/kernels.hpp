#pragma once

// Real-space kernel amplitudes of the Bogoliubov circuit, computed three
// independent ways: per-phase closed forms, adaptive quadrature of the
// Fourier integral, and finite-N momentum sums.
//
// Conventions (fixed once, so every cross-check is a sharp equality):
//   I_n  =  integral_{-pi}^{pi} e^{iqn} nu_q dq  =  2i integral_0^pi sin(qn) nu_q dq,
//   K_n  =  (2i/N) sum_{q>0 in Gamma} (nu_q^T - nu_q^R) sin(qn),
//   K_n -> (I_n^T - I_n^R) / (2 pi)  as N -> infinity.
// With the canonical branch of nu_q the closed forms are
//   disordered:  I_n = (i pi / 2n) (lambda_+^{-n} - lambda_-^n),
//   ordered:     I_n = (i pi / 2n) (2 - lambda_+^n - lambda_-^n),
// both purely imaginary with positive imaginary part at n = 1.

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "xyc/model.hpp"
#include "xyc/quadrature.hpp"

namespace xyc {

// One kernel amplitude; value is purely imaginary up to evaluation error.
struct KernelValue {
    int n;
    cplx value;
};

struct KernelQuadrature {
    KernelValue kernel;
    double abs_error;
};

// I_n = (i pi / 2n) sum_a weight_a mu_a^n with every |mu_a| <= 1.
struct AmplitudeTerm {
    int weight;
    cplx mu;
};

struct AmplitudeDecomposition {
    std::vector<AmplitudeTerm> terms;
};

namespace detail {

inline cplx ipow(cplx base, long e) {
    cplx out(1.0, 0.0);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline void require_off_critical(const ChainParams& p, const char* who) {
    if (classify_phase(p) == PhaseRegion::CriticalLine)
        throw CriticalLineError(std::string(who) + ": rejected on the critical line h = 1");
}

}  // namespace detail

inline AmplitudeDecomposition term_amplitudes(const ChainParams& p) {
    detail::require_off_critical(p, "term_amplitudes");
    const LambdaPair lam = lambda_pair(p);
    if (classify_phase(p) == PhaseRegion::DisorderedParamagnet)
        return {{{+1, cplx(1.0, 0.0) / lam.plus}, {-1, lam.minus}}};
    return {{{+2, cplx(1.0, 0.0)}, {-1, lam.plus}, {-1, lam.minus}}};
}

// Reconstruction of I_n from a decomposition; shared by the closed form and
// the series machinery.
inline cplx kernel_from_terms(const std::vector<AmplitudeTerm>& terms, int n) {
    cplx s(0.0, 0.0);
    for (const AmplitudeTerm& t : terms) s += double(t.weight) * detail::ipow(t.mu, n);
    return cplx(0.0, kPi / (2.0 * n)) * s;
}

inline KernelValue kernel_closed(const ChainParams& p, int n) {
    if (n < 1) throw std::invalid_argument("kernel_closed: n must be >= 1");
    detail::require_off_critical(p, "kernel_closed");
    const LambdaPair lam = lambda_pair(p);
    const cplx pref(0.0, kPi / (2.0 * n));
    if (classify_phase(p) == PhaseRegion::DisorderedParamagnet)
        return {n, pref * (detail::ipow(cplx(1.0, 0.0) / lam.plus, n) -
                           detail::ipow(lam.minus, n))};
    return {n, pref * (2.0 - detail::ipow(lam.plus, n) - detail::ipow(lam.minus, n))};
}

// Independent oracle: adaptive quadrature of 2i int_0^pi sin(qn) nu_q dq.
// The canonical nu branch keeps the integrand smooth on the open interval.
inline KernelQuadrature kernel_quadrature(const ChainParams& p, int n, double abs_tol) {
    if (n < 1) throw std::invalid_argument("kernel_quadrature: n must be >= 1");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("kernel_quadrature: tol must be > 0");
    const auto f = [&p, n](double q) { return std::sin(q * n) * bogoliubov_angle(p, q); };
    const int budget = std::max(4000, 32 * n);
    const QuadratureResult r = integrate_adaptive(f, 0.0, kPi, 0.5 * abs_tol, budget);
    return {{n, cplx(0.0, 2.0 * r.value)}, 2.0 * r.abs_error};
}

// Finite-N estimator over the momentum grid Gamma = (2pi/N) * (integer or
// half-integer offsets, N odd or even). Returns K_n as defined above.
inline cplx kernel_finite(const ChainParams& reference, const ChainParams& target, int n,
                          long n_sites) {
    if (n_sites < 4) throw std::invalid_argument("kernel_finite: N must be >= 4");
    if (n < 1 || n >= n_sites)
        throw std::invalid_argument("kernel_finite: need 1 <= n <= N - 1");
    const long count = n_sites / 2;
    const double offset = (n_sites % 2 == 1) ? 1.0 : 0.5;
    const double step = 2.0 * kPi / double(n_sites);
    double acc = 0.0;
    for (long j = 0; j < count; ++j) {
        const double q = step * (offset + double(j));
        acc += (bogoliubov_angle(target, q) - bogoliubov_angle(reference, q)) *
               std::sin(q * n);
    }
    return cplx(0.0, 2.0 * acc / double(n_sites));
}

// Decomposition of I_n^T - I_n^R: target terms plus negated reference terms,
// merged on equal mu with zero net weights dropped. Both states ordered makes
// the constant pair cancel here, which is what keeps e^{2nl} penalties
// summable at all.
inline std::vector<AmplitudeTerm> merged_difference(const ChainParams& target,
                                                    const ChainParams& reference) {
    std::vector<AmplitudeTerm> out;
    const auto add = [&out](int weight, const cplx& mu) {
        for (AmplitudeTerm& t : out) {
            if (std::abs(t.mu - mu) <= 1e-13) {
                t.weight += weight;
                return;
            }
        }
        out.push_back({weight, mu});
    };
    for (const AmplitudeTerm& t : term_amplitudes(target).terms) add(t.weight, t.mu);
    for (const AmplitudeTerm& t : term_amplitudes(reference).terms) add(-t.weight, t.mu);
    std::erase_if(out, [](const AmplitudeTerm& t) { return t.weight == 0; });
    return out;
}

}  // namespace xyc
