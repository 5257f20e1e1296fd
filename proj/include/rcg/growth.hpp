#pragma once

#include <cmath>
#include <stdexcept>

#include "errors.hpp"
#include "radial.hpp"

namespace rcg {

/// c * r^alpha * ln(e+r)^beta with c > 0. The one family on which the growth
/// integrals are decidable; anything else is rejected rather than guessed,
/// because numeric divergence testing is unsound.
struct PowerLogProfile {
    double c = 1, alpha = 0, beta = 0;

    RadialExpr expr() const { return rx::power_log(c, alpha, beta); }
    double eval(double r) const { return expr().eval(r); }
};

/// Ball-mass profile r -> integral of |f|^q over B(x0; r), with the growth
/// exponent p > 1. The q-dependence is absorbed into B.
struct GrowthProfile {
    double p = 2;
    PowerLogProfile B;
};

struct GrowthVerdict {
    bool finite = false, mild = false, obtuse = false, moderate = false, small = false;
    bool balanced = false;
    bool infinite() const { return !finite; }
    bool severe() const { return !mild; }
    bool acute() const { return !obtuse; }
    bool immoderate() const { return !moderate; }
    bool large() const { return !small; }
};

namespace detail {

/// Divergence of the tail integral of r^s ln(e+r)^t at infinity.
inline bool powerlog_tail_diverges(double s, double t) {
    if (s > -1.0) return true;
    if (s < -1.0) return false;
    return t >= -1.0;
}

/// Divergence of the series sum 2^{j q} j^{t} (dyadic sums of the family).
inline bool dyadic_series_diverges(double q, double t) {
    if (q > 0.0) return true;
    if (q < 0.0) return false;
    return t >= -1.0;
}

} // namespace detail

/// Closed-form decision of the five growth types on the power-log family.
///
/// finite:  liminf B(r)/r^p finite.
/// small:   divergence of the tail integral of (r/B)^{1/(p-1)}.
/// obtuse:  surface integral identified with B' through the coarea formula
///          (profiles with non-differentiable B are out of scope); divergence
///          of the tail integral of (1/B')^{1/(p-1)}.
/// mild:    existence of a good exhaustion sequence. The dyadic sequence
///          r_j = 2^j is sufficient; completeness on this family follows from
///          the necessity chain mild => obtuse together with obtuse <=> small
///          and small => mild, so the dyadic test decides.
/// moderate: membership of psi = (B/r^p)^{1/(p-1)} in the admissible family,
///          computed on its own algebraic route and asserted equal to small.
inline GrowthVerdict classify(const GrowthProfile& g) {
    const double p = g.p, a = g.B.alpha, b = g.B.beta;
    if (!(p > 1.0)) throw hypothesis_error("growth: unsupported exponent, need p > 1");
    if (!(g.B.c > 0)) throw hypothesis_error("growth: profile scale c must be positive");
    const bool nondecr = (a > 0.0) || (a == 0.0 && b >= 0.0);
    if (!nondecr)
        throw hypothesis_error("growth: profile must be nondecreasing for large r");

    GrowthVerdict v;
    v.finite = (a < p) || (a == p && b <= 0.0);

    // small: integrand (r/B)^{1/(p-1)} = c' r^{(1-a)/(p-1)} ln^{-b/(p-1)}
    v.small = detail::powerlog_tail_diverges((1.0 - a) / (p - 1.0), -b / (p - 1.0));

    // obtuse: leading exponents of B'
    double bp, bl; // B' ~ r^bp ln^bl
    if (a > 0.0) {
        bp = a - 1.0;
        bl = b;
    } else if (b > 0.0) {
        bp = -1.0;
        bl = b - 1.0;
    } else {
        bp = 0.0;
        bl = 0.0;
    }
    if (a == 0.0 && b == 0.0) {
        v.obtuse = true; // B' -> 0: the reciprocal integrand diverges outright
    } else {
        v.obtuse = detail::powerlog_tail_diverges(-bp / (p - 1.0), -bl / (p - 1.0));
    }

    // mild: dyadic terms ((r_{j+1}-r_j)^p / Delta B_j)^{1/(p-1)} ~ 2^{j q} j^t
    {
        double q, t;
        if (a > 0.0) {
            q = (p - a) / (p - 1.0);
            t = -b / (p - 1.0);
        } else if (b > 0.0) {
            q = p / (p - 1.0);
            t = -(b - 1.0) / (p - 1.0);
        } else {
            q = p / (p - 1.0);
            t = 0.0;
        }
        v.mild = detail::dyadic_series_diverges(q, t);
    }

    // moderate: psi = (B/r^p)^{1/(p-1)}, then 1/(r psi) as its own route
    {
        const double psi_pow = (a - p) / (p - 1.0);
        const double psi_log = b / (p - 1.0);
        v.moderate = detail::powerlog_tail_diverges(-1.0 - psi_pow, -psi_log);
    }
    if (v.moderate != v.small)
        throw std::logic_error("growth: moderate and small verdicts disagree on the family");

    v.balanced = v.finite || v.mild || v.obtuse || v.moderate || v.small;
    return v;
}

/// Bounded ball-mass (an L^q object): every growth type holds, for every
/// p >= 0, by the liminf and tail-integral computations on a constant bound.
inline GrowthVerdict classify_Lq_bounded(double total_mass) {
    if (!(total_mass >= 0) || std::isinf(total_mass))
        throw hypothesis_error("growth: total mass must be finite");
    GrowthVerdict v;
    v.finite = v.mild = v.obtuse = v.moderate = v.small = v.balanced = true;
    return v;
}

/// Truncated numeric evaluation of the small-growth tail integral on [a, R];
/// the closed-form verdict must match its trend (tests cross-check this).
inline double small_growth_integral(const GrowthProfile& g, double a, double R,
                                    double tol = 1e-6) {
    const double p = g.p;
    const double s = (1.0 - g.B.alpha) / (p - 1.0);
    const double t = -g.B.beta / (p - 1.0);
    const double c = std::pow(1.0 / g.B.c, 1.0 / (p - 1.0));
    RadialExpr integrand = rx::power_log(c, s, t);
    IntegrateOptions opts;
    // tolerance scales with the span: the trend comparison is coarse and the
    // integrand ranges over decades
    opts.tol = tol * std::max(1.0, R - a);
    opts.max_subdivisions = 2000000;
    return integrate(integrand, a, R, opts);
}

} // namespace rcg
