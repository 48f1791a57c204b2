#pragma once

// Minimal special-function kit: the polylogarithm Li_s(z) on the closed unit
// disk, the Riemann zeta function on s > 1, and the real gamma function.
//
// Li_s is evaluated strictly by its defining series sum_{k>=1} z^k / k^s.
// Outside |z| <= 1 (and on the unit circle for s <= 1) the series is not a
// valid representation of the penalized complexity sum, so those inputs are
// rejected instead of analytically continued.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "xyc/model.hpp"

namespace xyc {

struct PolylogQuery {
    double s;    // real order
    cplx z;      // argument, |z| <= 1
    double tol;  // relative tolerance
};

struct PolylogResult {
    cplx value{0.0, 0.0};
    double abs_error = 0.0;
    bool converged = true;
    long terms = 0;
};

// Riemann zeta on s > 1 by a truncated series plus Euler-Maclaurin tail
// corrections through B8. Relative error well below 1e-12 for s in (1, 60].
inline double zeta_val(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta_val: requires s > 1");
    constexpr int kBase = 24;
    double sum = 0.0;
    for (int k = kBase; k >= 1; --k) sum += std::pow(double(k), -s);
    sum += std::pow(double(kBase), 1.0 - s) / (s - 1.0);
    sum -= 0.5 * std::pow(double(kBase), -s);
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * kBase^{-s-2k+1}
    constexpr double bern_over_fact[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                          -1.0 / 1209600.0};
    double rising = s;  // s(s+1)...(s+2k-2)
    double npow = std::pow(double(kBase), -s - 1.0);
    for (int k = 1; k <= 4; ++k) {
        sum += bern_over_fact[k - 1] * rising * npow;
        rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
        npow /= double(kBase) * double(kBase);
    }
    return sum;
}

inline double gamma_val(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_val: pole at a non-positive integer");
    return std::tgamma(x);
}

inline PolylogResult polylog(double s, cplx z, double rel_tol, long max_terms = 10'000'000) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("polylog: tol must be > 0");
    constexpr double kEdge = 1e-12;
    const double az = std::abs(z);
    if (az > 1.0 + kEdge)
        throw std::domain_error("polylog: |z| > 1 is outside the series domain");
    const bool on_circle = az >= 1.0 - kEdge;
    if (on_circle && !(s > 1.0))
        throw std::domain_error("polylog: |z| = 1 requires s > 1");
    if (on_circle && std::abs(z - cplx(1.0, 0.0)) <= kEdge) {
        const double v = zeta_val(s);
        return {cplx(v, 0.0), 8.0 * std::abs(v) * std::numeric_limits<double>::epsilon(),
                true, 0};
    }

    cplx zk(1.0, 0.0);
    double azk = 1.0;  // |z|^k, tracked incrementally
    cplx acc(0.0, 0.0);
    for (long k = 1; k <= max_terms; ++k) {
        zk *= z;
        azk *= az;
        acc += zk * std::pow(double(k), -s);

        double tail;
        if (on_circle) {
            // p-series tail: sum_{j>k} j^{-s} <= k^{1-s}/(s-1)
            tail = std::pow(double(k), 1.0 - s) / (s - 1.0);
        } else if (s >= 0.0) {
            // geometric majorant with the k^{-s} factor frozen at k+1
            tail = azk * az / ((1.0 - az) * std::pow(double(k + 1), s));
        } else {
            // terms grow like k^{|s|} |z|^k; once the term ratio bound
            // r = |z| (1 + 1/k)^{|s|} drops below 1 the tail is geometric
            const double r = az * std::pow(1.0 + 1.0 / double(k), -s);
            tail = r < 1.0 ? azk * az * std::pow(double(k + 1), -s) / (1.0 - r)
                           : std::numeric_limits<double>::infinity();
        }
        if (tail <= rel_tol * std::max(std::abs(acc), 1e-300)) {
            const double round = 4.0 * std::abs(acc) * std::numeric_limits<double>::epsilon();
            return {acc, tail + round, true, k};
        }
        if (k == max_terms)
            return {acc, std::isfinite(tail) ? tail : std::abs(acc), false, k};
    }
    return {acc, std::abs(acc), false, max_terms};  // max_terms < 1
}

inline PolylogResult polylog(const PolylogQuery& q, long max_terms = 10'000'000) {
    return polylog(q.s, q.z, q.tol, max_terms);
}

}  // namespace xyc
