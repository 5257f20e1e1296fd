#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "ode.hpp"

namespace rcg {

enum class ComparisonKind {
    jacobi_pair,       ///< supersolution f1 vs subsolution f2, both second order
    riccati_pair,      ///< supersolution g1 vs subsolution g2, both first order
    riccati_vs_jacobi, ///< mixed: g1 vs kappa2 f2'/f2
    jacobi_vs_riccati, ///< mixed: kappa1 f1'/f1 vs g2
    model_bounds       ///< curvature-to-bound certificate on a model manifold
};

inline const char* to_string(ComparisonKind k) {
    switch (k) {
        case ComparisonKind::jacobi_pair: return "jacobi-pair";
        case ComparisonKind::riccati_pair: return "riccati-pair";
        case ComparisonKind::riccati_vs_jacobi: return "riccati-vs-jacobi";
        case ComparisonKind::jacobi_vs_riccati: return "jacobi-vs-riccati";
        case ComparisonKind::model_bounds: return "model-bounds";
    }
    return "?";
}

struct Tolerances {
    double hyp_tol = 1e-6;
    double con_tol = 1e-6;
    double residual_tol = 1e-6;
};

namespace detail {
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace detail

/// Sampled margin record witnessing (or refuting) a comparison inequality.
/// pass holds exactly when every hypothesis margin clears -hyp_tol, every
/// conclusion margin clears -con_tol, kappa1 <= kappa2, and the domain-end
/// ordering t1 <= t2 holds.
struct ComparisonCertificate {
    ComparisonKind kind = ComparisonKind::jacobi_pair;
    bool pass = false;
    double kappa1 = 0, kappa2 = 0;
    std::vector<double> radii;
    std::vector<double> hypothesis_margins; ///< G1 - G2 per node
    std::vector<double> conclusion_margins; ///< inequality slack per node
    double worst_margin = 0;
    double worst_radius = 0;
    bool t_order_ok = true;

    std::string to_record() const {
        std::string s = to_string(kind);
        s += pass ? " pass" : " fail";
        s += " worst_margin=" + detail::fmt17(worst_margin);
        s += " worst_radius=" + detail::fmt17(worst_radius);
        return s;
    }

    void write_margins_csv(std::ostream& os) const {
        os << "r,hypothesis_margin,conclusion_margin\n";
        for (std::size_t i = 0; i < radii.size(); ++i)
            os << detail::fmt17(radii[i]) << ',' << detail::fmt17(hypothesis_margins[i]) << ','
               << detail::fmt17(conclusion_margins[i]) << '\n';
    }
};

namespace detail {

inline std::vector<double> union_window(const std::vector<double>& g1,
                                        const std::vector<double>& g2, double lo, double hi) {
    std::vector<double> u;
    u.reserve(g1.size() + g2.size());
    for (double t : g1)
        if (t >= lo && t <= hi) u.push_back(t);
    for (double t : g2)
        if (t >= lo && t <= hi) u.push_back(t);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14 * (1 + std::abs(a)); }),
            u.end());
    if (u.size() > 4096) { // thin evenly, keep endpoints
        std::vector<double> thin;
        const double step = static_cast<double>(u.size() - 1) / 4095.0;
        for (int i = 0; i < 4096; ++i)
            thin.push_back(u[static_cast<std::size_t>(i * step)]);
        u = std::move(thin);
    }
    if (u.size() < 2) throw hypothesis_error("comparison: empty overlap window");
    return u;
}

inline void require_kappa_order(double k1, double k2) {
    if (!(k1 <= k2))
        throw hypothesis_error("comparison: requires 0 < kappa1 <= kappa2, got kappa1=" +
                               fmt17(k1) + " kappa2=" + fmt17(k2));
}

inline std::vector<double> coefficient_margins(const RadialExpr& G1, const RadialExpr& G2,
                                               const std::vector<double>& radii, double hyp_tol) {
    std::vector<double> m(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        m[i] = G1.eval(radii[i]) - G2.eval(radii[i]);
        if (m[i] < -hyp_tol)
            throw hypothesis_error("comparison: coefficient ordering G2 <= G1 fails at r=" +
                                   fmt17(radii[i]) + " (margin " + fmt17(m[i]) + ")");
    }
    return m;
}

inline void require_jacobi_super(const JacobiSolution& s, double tol, const char* who) {
    const auto rr = jacobi_residual_range(s);
    if (rr.max > tol)
        throw hypothesis_error(std::string("comparison: ") + who +
                               " is not a supersolution (max residual " + fmt17(rr.max) + ")");
}
inline void require_jacobi_sub(const JacobiSolution& s, double tol, const char* who) {
    const auto rr = jacobi_residual_range(s);
    if (rr.min < -tol)
        throw hypothesis_error(std::string("comparison: ") + who +
                               " is not a subsolution (min residual " + fmt17(rr.min) + ")");
}
inline void require_riccati_super(const RiccatiSolution& s, double tol, const char* who) {
    const auto rr = riccati_residual_range(s);
    if (rr.max > tol)
        throw hypothesis_error(std::string("comparison: ") + who +
                               " is not a supersolution (max residual " + fmt17(rr.max) + ")");
}
inline void require_riccati_sub(const RiccatiSolution& s, double tol, const char* who) {
    const auto rr = riccati_residual_range(s);
    if (rr.min < -tol)
        throw hypothesis_error(std::string("comparison: ") + who +
                               " is not a subsolution (min residual " + fmt17(rr.min) + ")");
}

template <class SlackFn>
ComparisonCertificate finish(ComparisonKind kind, double k1, double k2,
                             std::vector<double> radii, std::vector<double> hyp,
                             bool t_order_ok, const Tolerances& tol, SlackFn&& slack) {
    ComparisonCertificate cert;
    cert.kind = kind;
    cert.kappa1 = k1;
    cert.kappa2 = k2;
    cert.radii = std::move(radii);
    cert.hypothesis_margins = std::move(hyp);
    cert.t_order_ok = t_order_ok;
    cert.conclusion_margins.resize(cert.radii.size());
    double worst = 1e300, worst_r = cert.radii.front();
    double worst_hyp = 1e300;
    for (std::size_t i = 0; i < cert.radii.size(); ++i) {
        cert.conclusion_margins[i] = slack(cert.radii[i]);
        if (cert.conclusion_margins[i] < worst) {
            worst = cert.conclusion_margins[i];
            worst_r = cert.radii[i];
        }
        worst_hyp = std::min(worst_hyp, cert.hypothesis_margins[i]);
    }
    cert.worst_margin = worst;
    cert.worst_radius = worst_r;
    cert.pass = (worst >= -tol.con_tol) && (worst_hyp >= -tol.hyp_tol) && (k1 <= k2) && t_order_ok;
    return cert;
}

} // namespace detail

/// Second order vs second order: supersolution f1 against subsolution f2.
/// Certifies f1'/f1 <= f2'/f2 and f1 <= f2 on the overlap, plus t1 <= t2.
inline ComparisonCertificate check_sturm(const JacobiSolution& f1, const JacobiSolution& f2,
                                         Tolerances tol = {}) {
    detail::require_kappa_order(f1.kappa, f2.kappa);
    detail::require_jacobi_super(f1, tol.residual_tol, "f1");
    detail::require_jacobi_sub(f2, tol.residual_tol, "f2");
    const double lo = 2.0 * std::max(f1.epsilon, f2.epsilon);
    const double hi = 0.95 * std::min(f1.end(), f2.end());
    auto radii = detail::union_window(f1.grid, f2.grid, lo, hi);
    auto hyp = detail::coefficient_margins(f1.G, f2.G, radii, tol.hyp_tol);
    const bool t_ok = f1.t_sup <= f2.t_sup + 10 * tol.con_tol;
    return detail::finish(ComparisonKind::jacobi_pair, f1.kappa, f2.kappa, std::move(radii),
                          std::move(hyp), t_ok, tol, [&](double r) {
                              const double a1 = f1.fprime(r) / f1.f(r);
                              const double a2 = f2.fprime(r) / f2.f(r);
                              return std::min(a2 - a1, f2.f(r) - f1.f(r));
                          });
}

/// First order vs first order: certifies g1 <= g2 on the overlap.
inline ComparisonCertificate check_riccati_pair(const RiccatiSolution& g1,
                                                const RiccatiSolution& g2, Tolerances tol = {}) {
    detail::require_kappa_order(g1.kappa, g2.kappa);
    detail::require_riccati_super(g1, tol.residual_tol, "g1");
    detail::require_riccati_sub(g2, tol.residual_tol, "g2");
    const double lo = 2.0 * std::max(g1.epsilon, g2.epsilon);
    const double hi = 0.95 * std::min(g1.end(), g2.end());
    auto radii = detail::union_window(g1.grid, g2.grid, lo, hi);
    auto hyp = detail::coefficient_margins(g1.G, g2.G, radii, tol.hyp_tol);
    const bool t_ok =
        g1.pole.value_or(g1.T) <= g2.pole.value_or(g2.T) + 10 * tol.con_tol;
    return detail::finish(ComparisonKind::riccati_pair, g1.kappa, g2.kappa, std::move(radii),
                          std::move(hyp), t_ok, tol,
                          [&](double r) { return g2.g(r) - g1.g(r); });
}

/// Mixed: Riccati supersolution g1 against Jacobi subsolution f2;
/// certifies g1 <= kappa2 f2'/f2 and t1 <= t2.
inline ComparisonCertificate check_mixed_I(const RiccatiSolution& g1, const JacobiSolution& f2,
                                           Tolerances tol = {}) {
    detail::require_kappa_order(g1.kappa, f2.kappa);
    detail::require_riccati_super(g1, tol.residual_tol, "g1");
    detail::require_jacobi_sub(f2, tol.residual_tol, "f2");
    const double lo = 2.0 * std::max(g1.epsilon, f2.epsilon);
    const double hi = 0.95 * std::min(g1.end(), f2.end());
    auto radii = detail::union_window(g1.grid, f2.grid, lo, hi);
    auto hyp = detail::coefficient_margins(g1.G, f2.G, radii, tol.hyp_tol);
    const bool t_ok = g1.pole.value_or(g1.T) <= f2.t_sup + 10 * tol.con_tol;
    return detail::finish(ComparisonKind::riccati_vs_jacobi, g1.kappa, f2.kappa,
                          std::move(radii), std::move(hyp), t_ok, tol, [&](double r) {
                              return f2.kappa * f2.fprime(r) / f2.f(r) - g1.g(r);
                          });
}

/// Mixed: Jacobi supersolution f1 against Riccati subsolution g2;
/// certifies kappa1 f1'/f1 <= g2 and t1 <= t2.
inline ComparisonCertificate check_mixed_II(const JacobiSolution& f1, const RiccatiSolution& g2,
                                            Tolerances tol = {}) {
    detail::require_kappa_order(f1.kappa, g2.kappa);
    detail::require_jacobi_super(f1, tol.residual_tol, "f1");
    detail::require_riccati_sub(g2, tol.residual_tol, "g2");
    const double lo = 2.0 * std::max(f1.epsilon, g2.epsilon);
    const double hi = 0.95 * std::min(f1.end(), g2.end());
    auto radii = detail::union_window(f1.grid, g2.grid, lo, hi);
    auto hyp = detail::coefficient_margins(f1.G, g2.G, radii, tol.hyp_tol);
    const bool t_ok = f1.t_sup <= g2.pole.value_or(g2.T) + 10 * tol.con_tol;
    return detail::finish(ComparisonKind::jacobi_vs_riccati, f1.kappa, g2.kappa,
                          std::move(radii), std::move(hyp), t_ok, tol, [&](double r) {
                              return g2.g(r) - f1.kappa * f1.fprime(r) / f1.f(r);
                          });
}

/// Residual-sign report: the inequality versions of the duality theorem are
/// exposed this way instead of as separate transforms.
struct ResidualSignReport {
    double min_residual, max_residual;
    bool is_supersolution(double tol) const { return max_residual <= tol; }
    bool is_subsolution(double tol) const { return min_residual >= -tol; }
};

inline ResidualSignReport residual_sign_report(const JacobiSolution& s) {
    auto rr = jacobi_residual_range(s);
    return {rr.min, rr.max};
}
inline ResidualSignReport residual_sign_report(const RiccatiSolution& s) {
    auto rr = riccati_residual_range(s);
    return {rr.min, rr.max};
}

} // namespace rcg
