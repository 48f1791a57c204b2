#pragma once

// Ground states of the transverse-field XY chain, parameterized by the field
// strength h and the anisotropy gamma, plus the analytic quantities everything
// downstream is built from: the dispersion, the Bogoliubov angle, the
// correlation parameters lambda± and the correlation lengths.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string_view>

namespace xyc {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// A point (h, gamma) of the phase diagram. Canonical domain: h >= 0,
// gamma > 0. The closed forms below are singular at gamma = -1; the mirror
// quadrants are reachable through the symmetries h -> -h, gamma -> -gamma and
// are intentionally not represented.
struct ChainParams {
    double h;
    double gamma;

    ChainParams(double h_, double gamma_) : h(h_), gamma(gamma_) {
        if (!std::isfinite(h) || !std::isfinite(gamma))
            throw std::invalid_argument("ChainParams: h and gamma must be finite");
        if (h < 0.0)
            throw std::invalid_argument("ChainParams: h must be >= 0");
        if (!(gamma > 0.0))
            throw std::invalid_argument("ChainParams: gamma must be > 0");
    }

    friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

enum class PhaseRegion {
    DisorderedParamagnet,   // h > 1
    OrderedNonOscillatory,  // h < 1, h^2 + gamma^2 > 1
    OrderedOscillatory,     // h < 1, h^2 + gamma^2 < 1 (complex lambda)
    CriticalLine,           // h = 1
    FactorizingCurve,       // h^2 + gamma^2 = 1, h < 1 (lambda+ = lambda-)
};

inline std::string_view to_string(PhaseRegion r) {
    switch (r) {
        case PhaseRegion::DisorderedParamagnet: return "disordered";
        case PhaseRegion::OrderedNonOscillatory: return "ordered";
        case PhaseRegion::OrderedOscillatory: return "oscillatory";
        case PhaseRegion::CriticalLine: return "critical";
        case PhaseRegion::FactorizingCurve: return "factorizing";
    }
    return "?";
}

// Signals evaluation at (or within tolerance of) the critical line h = 1,
// where the real-space series changes character and closed forms are refused.
class CriticalLineError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Correlation parameters lambda± = (h ± sqrt(h^2 + gamma^2 - 1)) / (1 + gamma).
// Complex-conjugate pair inside the circle h^2 + gamma^2 < 1, real otherwise.
struct LambdaPair {
    cplx plus;
    cplx minus;
};

// xi± = 1 / |ln |lambda±||, in lattice sites.
struct CorrelationLengths {
    double xi_plus;
    double xi_minus;
};

inline double dispersion(const ChainParams& p, double q) {
    if (!std::isfinite(q)) throw std::invalid_argument("dispersion: q must be finite");
    return std::hypot(p.h - std::cos(q), p.gamma * std::sin(q));
}

// Bogoliubov angle on the canonical branch: half the two-argument angle of the
// point (h - cos q, gamma sin q). For gamma > 0 this is continuous on (0, pi)
// with values in (0, pi/2); the jump of the odd extension nu(-q) = -nu(q)
// sits at q = 0, which is what makes the closed-form kernels below exact.
// Note this differs from half the principal arctan of the ratio by pi/2 on
// (0, arccos h) when h < 1.
inline double bogoliubov_angle(const ChainParams& p, double q) {
    if (!(q > 0.0 && q < kPi))
        throw std::invalid_argument("bogoliubov_angle: q must lie in (0, pi)");
    return 0.5 * std::atan2(p.gamma * std::sin(q), p.h - std::cos(q));
}

inline LambdaPair lambda_pair(const ChainParams& p) {
    const double disc = p.h * p.h + p.gamma * p.gamma - 1.0;
    // principal square root: nonnegative imaginary part for disc < 0
    const cplx root = std::sqrt(cplx(disc, 0.0));
    const double denom = 1.0 + p.gamma;
    return {(p.h + root) / denom, (p.h - root) / denom};
}

inline PhaseRegion classify_phase(const ChainParams& p, double tol = 1e-12) {
    if (!(tol > 0.0)) throw std::invalid_argument("classify_phase: tol must be > 0");
    if (std::abs(p.h - 1.0) <= tol) return PhaseRegion::CriticalLine;
    if (p.h > 1.0) return PhaseRegion::DisorderedParamagnet;
    const double c = p.h * p.h + p.gamma * p.gamma;
    if (std::abs(c - 1.0) <= tol) return PhaseRegion::FactorizingCurve;
    return c < 1.0 ? PhaseRegion::OrderedOscillatory : PhaseRegion::OrderedNonOscillatory;
}

namespace detail {

// Decay length of |lambda|^n. |lambda| = 0 is the product-state limit with
// xi = 0; |lambda| = 1 means a divergent length.
inline double decay_length(const cplx& lambda) {
    const double a = std::abs(lambda);
    if (a == 0.0) return 0.0;
    const double l = std::abs(std::log(a));
    if (l <= 1e-12)
        throw CriticalLineError("correlation length diverges: |lambda| = 1");
    return 1.0 / l;
}

}  // namespace detail

inline CorrelationLengths correlation_lengths(const ChainParams& p) {
    const LambdaPair lam = lambda_pair(p);
    return {detail::decay_length(lam.plus), detail::decay_length(lam.minus)};
}

// max(xi+, xi-); +inf instead of throwing, for scan annotations.
inline double max_correlation_length(const ChainParams& p) {
    const LambdaPair lam = lambda_pair(p);
    double out = 0.0;
    for (const cplx& l : {lam.plus, lam.minus}) {
        const double a = std::abs(l);
        if (a == 0.0) continue;
        const double ln = std::abs(std::log(a));
        out = std::max(out, ln <= 1e-12 ? std::numeric_limits<double>::infinity() : 1.0 / ln);
    }
    return out;
}

}  // namespace xyc
