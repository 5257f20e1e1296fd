#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "comparison.hpp"
#include "errors.hpp"
#include "ode.hpp"
#include "radial.hpp"

namespace rcg {

/// Rotationally symmetric model dr^2 + f(r)^2 dsigma^2. Radial curvature
/// K = -f''/f, Delta r = (n-1) f'/f, the Hessian of r has eigenvalue f'/f on
/// the orthocomplement of d/dr and 0 on d/dr, and the geodesic-sphere mean
/// curvature is f'/f.
///
/// Models with f'(0) != 1 (e.g. warp r^A, A > 1) are admitted as
/// "generalized" models: the positivity and K-relation invariants hold, the
/// unit initial slope is waived and flagged. Weak (distributional) versions
/// of the Laplacian bounds are a documented trust assumption, not verified
/// here; every certificate in this module is pointwise on (0, T).
struct ModelManifold {
    int n = 2;
    RadialExpr warp;
    RadialExpr warp_prime;
    RadialExpr warp_second;
    double T = 0;
    bool generalized = false;

    double f(double r) const { return warp.eval(r); }
    double fprime(double r) const { return warp_prime.eval(r); }
    double K(double r) const { return -warp_second.eval(r) / warp.eval(r); }
    /// radial Ricci curvature on models: (n-1) K(r)
    double ric_rad(double r) const { return (n - 1) * K(r); }
};

inline ModelManifold make_model(int n, const RadialExpr& warp, double T,
                                bool generalized = false) {
    if (n < 2) throw hypothesis_error("model: dimension must be >= 2");
    ModelManifold m;
    m.n = n;
    m.warp = warp;
    m.warp_prime = warp.derivative();
    m.warp_second = m.warp_prime.derivative();
    m.T = T;
    m.generalized = generalized;
    if (!generalized) {
        // f(0) = 0, f'(0) = 1 checked by extrapolation at small radii
        const double e = 1e-7 * std::min(1.0, T);
        if (std::abs(m.warp.eval(e) / e - 1.0) > 1e-3 || std::abs(m.warp_prime.eval(e) - 1.0) > 1e-3)
            throw hypothesis_error("model: warp does not satisfy f(0)=0, f'(0)=1; "
                                   "construct with generalized=true to waive");
    }
    for (int i = 1; i <= 8; ++i) {
        const double r = T * i / 9.0;
        if (!(m.warp.eval(r) > 0))
            throw hypothesis_error("model: warp must be positive on (0, T)");
    }
    return m;
}

/// Invert K = -f''/f by solving the Jacobi system with G = K, kappa = 1.
/// The domain is truncated to the first zero of the warp.
inline ModelManifold from_curvature(int n, const RadialExpr& K, double T,
                                    SolverOptions opts = {}) {
    JacobiSolution f = solve_jacobi(K, 1.0, T, opts);
    ModelManifold m;
    m.n = n;
    m.warp = rx::from_curve(f.curve);
    m.warp_prime = m.warp.derivative();
    m.warp_second = m.warp_prime.derivative();
    m.T = f.t_sup < T ? f.t_sup : T;
    m.generalized = false;
    return m;
}

inline RadialExpr hess_eigenvalue(const ModelManifold& m) {
    return (m.warp_prime / m.warp).with_domain(m.T);
}
inline RadialExpr laplacian_r(const ModelManifold& m) {
    return (static_cast<double>(m.n - 1) * (m.warp_prime / m.warp)).with_domain(m.T);
}
inline RadialExpr mean_curvature(const ModelManifold& m) { return hess_eigenvalue(m); }

// ---------------------------------------------------------------------------
// Curvature hypotheses and the closed-form bound catalog
// ---------------------------------------------------------------------------

/// A = (1 + sqrt(1 + 4 a^2)) / 2 turns the curvature level a^2 of K = -a^2/r^2
/// into the power exponent with A(A-1) = a^2.
inline double power_exponent_from_square(double a_squared) {
    return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * a_squared));
}
inline double square_from_power_exponent(double A) { return A * (A - 1.0); }

struct CurvatureHypothesis {
    enum class Kind {
        ric_lower_power,    ///< Ric_rad >= -(n-1) A(A-1)/(c+r)^2, A >= 1
        ric_lower_positive, ///< Ric_rad >= (n-1) B1(1-B1)/(c+r)^2, 0 <= B1 <= 1
        sec_lower_power,    ///< K >= -A(A-1)/(c+r)^2, A >= 1
        sec_upper_power,    ///< K <= -A1(A1-1)/(c+r)^2, A1 >= 1
        two_sided_power,    ///< -A(A-1)/(c+r)^2 <= K <= -A1(A1-1)/(c+r)^2
        two_sided_ratio,    ///< -A/(c+r)^2 <= K <= -A1/(c+r)^2, 0 <= A1 <= A
        sec_lower_positive, ///< K >= B1(1-B1)/(c+r)^2, 0 <= B1 <= 1
        sec_lower_quarter,  ///< K >= B1/(c+r)^2, 0 <= B1 <= 1/4
        sec_upper_positive, ///< K <= B(1-B)/(c+r)^2, 0 <= B <= 1
        sec_upper_quarter,  ///< K <= B/(c+r)^2, 0 <= B <= 1/4
        pinch_quarter,      ///< B1/r^2 <= K <= B/r^2, 0 <= B1 <= B <= 1/4
        pinch_positive,     ///< B1(1-B1)/r^2 <= K <= B(1-B)/r^2
        equality_power,     ///< K = -A(A-1)/(c+r)^2
        flat,               ///< K = 0
        mixed_sign,         ///< -A/r^2 <= K <= B/r^2, 0 <= A, 0 <= B <= 1/4
        const_pinch,        ///< -alpha^2 <= K <= -beta^2
        decay_pinch         ///< -A/(1+r^2)^(1+eps) <= K <= B/(1+r^2)^(1+eps)
    } kind = Kind::flat;
    double A = 1, A1 = 1, B = 0, B1 = 0;
    double alpha = 1, beta = 1, eps = 1;
    double shift = 0; ///< c >= 0 in the (c+r)^2 variants
    /// Relabels which curvature function is compared (sectional resp. Ricci
    /// in place of the radial restrictions); on models both reduce to K(r).
    bool use_full_curvature = false;

    void validate() const {
        auto need = [](bool ok, const char* msg) {
            if (!ok) throw hypothesis_error(std::string("hypothesis: ") + msg);
        };
        need(shift >= 0, "shift c must be >= 0");
        switch (kind) {
            case Kind::ric_lower_power:
            case Kind::sec_lower_power:
            case Kind::equality_power: need(A >= 1, "A must be >= 1"); break;
            case Kind::sec_upper_power: need(A1 >= 1, "A1 must be >= 1"); break;
            case Kind::two_sided_power: need(A >= A1 && A1 >= 1, "need A >= A1 >= 1"); break;
            case Kind::two_sided_ratio: need(A >= A1 && A1 >= 0, "need A >= A1 >= 0"); break;
            case Kind::ric_lower_positive:
            case Kind::sec_lower_positive: need(B1 >= 0 && B1 <= 1, "need 0 <= B1 <= 1"); break;
            case Kind::sec_lower_quarter: need(B1 >= 0 && B1 <= 0.25, "need 0 <= B1 <= 1/4"); break;
            case Kind::sec_upper_positive: need(B >= 0 && B <= 1, "need 0 <= B <= 1"); break;
            case Kind::sec_upper_quarter: need(B >= 0 && B <= 0.25, "need 0 <= B <= 1/4"); break;
            case Kind::pinch_quarter:
                need(B1 >= 0 && B1 <= B && B <= 0.25, "need 0 <= B1 <= B <= 1/4");
                break;
            case Kind::pinch_positive:
                need(B1 >= 0 && B1 <= 1 && B >= 0 && B <= 1, "need 0 <= B1, B <= 1");
                break;
            case Kind::flat: break;
            case Kind::mixed_sign: need(A >= 0 && B >= 0 && B <= 0.25, "need A >= 0, 0 <= B <= 1/4"); break;
            case Kind::const_pinch: need(alpha > 0 && beta > 0 && alpha >= beta, "need alpha >= beta > 0"); break;
            case Kind::decay_pinch:
                need(eps > 0 && A >= 0 && B >= 0 && B < 2 * eps, "need eps > 0, A >= 0, 0 <= B < 2 eps");
                break;
        }
    }

    /// Curvature window [k_lo, k_hi] the hypothesis imposes on K at radius r
    /// (one side may be unbounded).
    std::pair<double, double> window(double r) const {
        const double inf = std::numeric_limits<double>::infinity();
        const double s2 = (shift + r) * (shift + r);
        switch (kind) {
            case Kind::ric_lower_power:
            case Kind::sec_lower_power: return {-A * (A - 1) / s2, inf};
            case Kind::ric_lower_positive:
            case Kind::sec_lower_positive: return {B1 * (1 - B1) / s2, inf};
            case Kind::sec_upper_power: return {-inf, -A1 * (A1 - 1) / s2};
            case Kind::two_sided_power: return {-A * (A - 1) / s2, -A1 * (A1 - 1) / s2};
            case Kind::two_sided_ratio: return {-A / s2, -A1 / s2};
            case Kind::sec_lower_quarter: return {B1 / s2, inf};
            case Kind::sec_upper_positive: return {-inf, B * (1 - B) / s2};
            case Kind::sec_upper_quarter: return {-inf, B / s2};
            case Kind::pinch_quarter: return {B1 / s2, B / s2};
            case Kind::pinch_positive: return {B1 * (1 - B1) / s2, B * (1 - B) / s2};
            case Kind::equality_power: {
                const double v = -A * (A - 1) / s2;
                return {v, v};
            }
            case Kind::flat: return {0.0, 0.0};
            case Kind::mixed_sign: return {-A / s2, B / s2};
            case Kind::const_pinch: return {-alpha * alpha, -beta * beta};
            case Kind::decay_pinch: {
                const double d = std::pow(1 + r * r, 1 + eps);
                return {-A / d, B / d};
            }
        }
        return {-inf, inf};
    }
};

enum class BoundRegister { hessian_eigenvalue, laplacian, mean_curvature };

/// Closed-form lower/upper bound functions implied by a curvature hypothesis.
/// Bounds are independent of the shift c; only the hypothesis test shifts.
struct BoundPair {
    std::optional<RadialExpr> lower, upper;
    BoundRegister applies_to = BoundRegister::hessian_eigenvalue;
};

inline BoundRegister default_register(CurvatureHypothesis::Kind k) {
    using K = CurvatureHypothesis::Kind;
    return (k == K::ric_lower_power || k == K::ric_lower_positive)
               ? BoundRegister::laplacian
               : BoundRegister::hessian_eigenvalue;
}

namespace detail {

struct HessBounds {
    std::optional<double> lo_over_r, hi_over_r; // bounds of the form v/r
    std::optional<RadialExpr> lo_expr, hi_expr; // general-shape bounds
};

inline HessBounds hess_bounds(const CurvatureHypothesis& h) {
    using K = CurvatureHypothesis::Kind;
    HessBounds b;
    auto root = [](double x) { return 0.5 * (1.0 + std::sqrt(x)); };
    switch (h.kind) {
        case K::ric_lower_power:
        case K::sec_lower_power: b.hi_over_r = h.A; break;
        case K::ric_lower_positive:
        case K::sec_lower_positive: b.hi_over_r = root(1 + 4 * h.B1 * (1 - h.B1)); break;
        case K::sec_upper_power: b.lo_over_r = h.A1; break;
        case K::two_sided_power:
            b.lo_over_r = h.A1;
            b.hi_over_r = h.A;
            break;
        case K::two_sided_ratio:
            b.lo_over_r = root(1 + 4 * h.A1);
            b.hi_over_r = root(1 + 4 * h.A);
            break;
        case K::sec_lower_quarter: b.hi_over_r = root(1 + 4 * h.B1); break;
        case K::sec_upper_positive: b.lo_over_r = std::abs(h.B - 0.5) + 0.5; break;
        case K::sec_upper_quarter: b.lo_over_r = root(1 - 4 * h.B); break;
        case K::pinch_quarter:
            b.lo_over_r = root(1 - 4 * h.B);
            b.hi_over_r = root(1 + 4 * h.B1);
            break;
        case K::pinch_positive:
            b.lo_over_r = std::abs(h.B - 0.5) + 0.5;
            b.hi_over_r = root(1 + 4 * h.B1 * (1 - h.B1));
            break;
        case K::equality_power:
            b.lo_over_r = h.A;
            b.hi_over_r = h.A;
            break;
        case K::flat:
            b.lo_over_r = 1.0;
            b.hi_over_r = 1.0;
            break;
        case K::mixed_sign:
            b.lo_over_r = root(1 - 4 * h.B);
            b.hi_over_r = root(1 + 4 * h.A);
            break;
        case K::const_pinch:
            // beta coth(beta r) <= f'/f <= alpha coth(alpha r)
            b.lo_expr = rx::cosh(h.beta, h.beta) / rx::sinh(1.0, h.beta);
            b.hi_expr = rx::cosh(h.alpha, h.alpha) / rx::sinh(1.0, h.alpha);
            break;
        case K::decay_pinch:
            b.lo_over_r = 1.0 - h.B / (2 * h.eps);
            b.hi_over_r = std::exp(h.A / (2 * h.eps));
            break;
    }
    return b;
}

} // namespace detail

/// Closed-form bound pair for a hypothesis, in the requested register.
/// Ricci-type hypotheses only bound the Laplacian (and the mean curvature,
/// its trace sibling); asking for their Hessian register is refused.
inline BoundPair bound_catalog(const CurvatureHypothesis& h, int n,
                               std::optional<BoundRegister> reg = std::nullopt) {
    h.validate();
    if (n < 2) throw hypothesis_error("bound_catalog: dimension must be >= 2");
    const BoundRegister r = reg.value_or(default_register(h.kind));
    const bool ric = h.kind == CurvatureHypothesis::Kind::ric_lower_power ||
                     h.kind == CurvatureHypothesis::Kind::ric_lower_positive;
    if (ric && r == BoundRegister::hessian_eigenvalue)
        throw hypothesis_error("bound_catalog: Ricci hypotheses bound only the Laplacian "
                               "and mean curvature, not the Hessian");
    const double scale = (r == BoundRegister::laplacian) ? static_cast<double>(n - 1) : 1.0;
    const auto hb = detail::hess_bounds(h);
    BoundPair out;
    out.applies_to = r;
    if (hb.lo_over_r) out.lower = rx::power(scale * *hb.lo_over_r, -1.0);
    if (hb.hi_over_r) out.upper = rx::power(scale * *hb.hi_over_r, -1.0);
    if (hb.lo_expr) out.lower = scale * *hb.lo_expr;
    if (hb.hi_expr) out.upper = scale * *hb.hi_expr;
    return out;
}

/// Certify that the model's curvature satisfies the hypothesis and that the
/// model quantity sits inside the catalog bounds pointwise on [2e, 0.95 T].
/// Hypothesis margins record min(K - k_lo, k_hi - K) per node.
inline ComparisonCertificate verify_bounds(const ModelManifold& m, const CurvatureHypothesis& h,
                                           Tolerances tol = {}, int grid_nodes = 512) {
    h.validate();
    const BoundRegister reg = default_register(h.kind);
    BoundPair bp = bound_catalog(h, m.n, reg);

    const double lo = 2e-6 * std::min(1.0, m.T);
    const double hi = 0.95 * m.T;
    std::vector<double> radii(static_cast<std::size_t>(grid_nodes));
    const double ratio = std::pow(hi / lo, 1.0 / (grid_nodes - 1));
    double r = lo;
    for (int i = 0; i < grid_nodes; ++i, r *= ratio) radii[static_cast<std::size_t>(i)] = r;

    std::vector<double> hyp(radii.size()), con(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double rr = radii[i];
        const double K = m.K(rr);
        const auto [klo, khi] = h.window(rr);
        double margin = std::numeric_limits<double>::infinity();
        double scale = 1.0;
        if (std::isfinite(klo)) {
            margin = std::min(margin, K - klo);
            scale = std::max(scale, std::abs(klo));
        }
        if (std::isfinite(khi)) {
            margin = std::min(margin, khi - K);
            scale = std::max(scale, std::abs(khi));
        }
        if (!std::isfinite(margin)) margin = 0.0;
        // scale-free in r: the windows shrink like 1/r^2
        if (margin < -tol.hyp_tol * scale)
            throw hypothesis_error("verify_bounds: curvature hypothesis fails at r=" +
                                   detail::fmt17(rr) + " (margin " + detail::fmt17(margin) + ")");
        hyp[i] = margin;
    }

    const double scale = (reg == BoundRegister::laplacian) ? static_cast<double>(m.n - 1) : 1.0;
    ComparisonCertificate cert;
    cert.kind = ComparisonKind::model_bounds;
    cert.kappa1 = cert.kappa2 = 1.0;
    cert.radii = radii;
    cert.hypothesis_margins = std::move(hyp);
    cert.conclusion_margins.resize(radii.size());
    double worst = std::numeric_limits<double>::infinity(), worst_r = radii.front();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double rr = radii[i];
        const double q = scale * m.fprime(rr) / m.f(rr);
        double slack = std::numeric_limits<double>::infinity();
        if (bp.lower) slack = std::min(slack, q - bp.lower->eval(rr));
        if (bp.upper) slack = std::min(slack, bp.upper->eval(rr) - q);
        // measure slack relative to the 1/r blow-up of the bounds
        const double unit = std::max(1.0, std::abs(q));
        con[i] = slack / unit;
        cert.conclusion_margins[i] = con[i];
        if (con[i] < worst) {
            worst = con[i];
            worst_r = rr;
        }
    }
    cert.worst_margin = worst;
    cert.worst_radius = worst_r;
    cert.t_order_ok = true;
    cert.pass = worst >= -tol.con_tol;
    return cert;
}

/// CSV rows (r, lower, value, upper) for plotting; empty bound prints nothing.
inline void write_bound_table_csv(std::ostream& os, const BoundPair& bp,
                                  const ModelManifold* model, double rmin, double rmax,
                                  int count) {
    os << "r,lower,value,upper\n";
    for (int i = 0; i < count; ++i) {
        const double r = rmin + (rmax - rmin) * i / (count - 1 > 0 ? count - 1 : 1);
        os << detail::fmt17(r) << ',';
        if (bp.lower) os << detail::fmt17(bp.lower->eval(r));
        os << ',';
        if (model) {
            const double scale =
                bp.applies_to == BoundRegister::laplacian ? model->n - 1.0 : 1.0;
            os << detail::fmt17(scale * model->fprime(r) / model->f(r));
        }
        os << ',';
        if (bp.upper) os << detail::fmt17(bp.upper->eval(r));
        os << '\n';
    }
}

} // namespace rcg
