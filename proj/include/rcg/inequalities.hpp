#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "radial.hpp"

namespace rcg {

// ---------------------------------------------------------------------------
// Sharp-constant tables for the weighted interpolation inequality
//   C Int |u|^2 / r^{a+b+1} <= (Int |u|^2/r^{2a})^{1/2} (Int |grad u|^2/r^{2b})^{1/2}
// ---------------------------------------------------------------------------

/// Curvature case selecting one row of the constant tables. The `_shifted`
/// behaviour lives in CknParams::c; the constant itself never depends on c.
enum class CknCase {
    flat_nonneg,        ///< K >= 0, needs n <= a+b+1
    flat_nonpos,        ///< K <= 0, needs a+b+1 <= n
    flat_zero,          ///< K == 0, any a, b
    ric_lower_power,    ///< Ric_rad >= -(n-1)A(A-1)/(c+r)^2, needs n <= (a+b+A)/A
    ric_lower_positive, ///< Ric_rad >= (n-1)B1(1-B1)/(c+r)^2
    ric_nonneg,         ///< Ric_rad >= 0, needs n <= a+b+1
    k_lower_power,      ///< K >= -A(A-1)/(c+r)^2, needs n <= (a+b+A)/A
    k_upper_power,      ///< K <= -A1(A1-1)/(c+r)^2, needs n >= (a+b+A1)/A1
    k_equal_power,      ///< K == -A(A-1)/(c+r)^2, any a, b
    k_equal_ratio,      ///< K == -A/(c+r)^2, any a, b
    k_lower_positive,   ///< K >= B1(1-B1)/(c+r)^2
    k_upper_positive    ///< K <= B(1-B)/(c+r)^2
};

struct CknParams {
    double A = 1, A1 = 1, B = 0, B1 = 0;
    double c = 0;
};

namespace detail {

inline void side(bool ok, const std::string& what) {
    if (!ok) throw hypothesis_error("constant table: side condition fails: " + what);
}

} // namespace detail

/// The closed-form constant of the matching table row; throws when the row's
/// side condition is violated, naming the failed inequality.
inline double ckn_constant(CknCase cs, double a, double b, int n, CknParams p = {}) {
    const double nn = n;
    const double ab = a + b;
    switch (cs) {
        case CknCase::flat_nonneg:
            detail::side(nn <= ab + 1, "n <= a+b+1");
            return -(nn - (ab + 1)) / 2;
        case CknCase::flat_nonpos:
            detail::side(ab + 1 <= nn, "a+b+1 <= n");
            return (nn - (ab + 1)) / 2;
        case CknCase::flat_zero:
            return std::abs((nn - (ab + 1)) / 2);
        case CknCase::ric_lower_power:
        case CknCase::k_lower_power:
            detail::side(p.A >= 1, "A >= 1");
            detail::side(nn <= (ab + p.A) / p.A, "n <= (a+b+A)/A");
            return (ab - (nn - 1) * p.A) / 2;
        case CknCase::k_upper_power:
            detail::side(p.A1 >= 1, "A1 >= 1");
            detail::side(nn >= (ab + p.A1) / p.A1, "n >= (a+b+A1)/A1");
            return -(ab - (nn - 1) * p.A1) / 2;
        case CknCase::k_equal_power:
            detail::side(p.A >= 1, "A >= 1");
            return std::abs((ab - (nn - 1) * p.A) / 2);
        case CknCase::k_equal_ratio: {
            detail::side(p.A >= 0, "A >= 0");
            const double root = 1 + std::sqrt(1 + 4 * p.A);
            return std::abs((2 * ab - (nn - 1) * root) / 4);
        }
        case CknCase::ric_lower_positive:
        case CknCase::k_lower_positive: {
            detail::side(p.B1 >= 0 && p.B1 <= 1, "0 <= B1 <= 1");
            const double root = 1 + std::sqrt(1 + 4 * p.B1 * (1 - p.B1));
            detail::side(nn <= (2 * ab + root) / root, "n <= (2a+2b+1+sqrt(1+4B1(1-B1)))/(1+sqrt(1+4B1(1-B1)))");
            return (2 * ab - (nn - 1) * root) / 4;
        }
        case CknCase::ric_nonneg:
            detail::side(nn <= ab + 1, "n <= a+b+1");
            return (ab + 1 - nn) / 2;
        case CknCase::k_upper_positive: {
            detail::side(p.B >= 0 && p.B <= 1, "0 <= B <= 1");
            const double beta = std::abs(p.B - 0.5) + 0.5;
            detail::side(nn >= (ab + beta) / beta, "n >= (a+b+|B-1/2|+1/2)/(|B-1/2|+1/2)");
            return ((nn - 1) * beta - ab) / 2;
        }
    }
    throw hypothesis_error("constant table: unknown case");
}

/// Hypothesis the case imposes on a model's radial curvature, for checking
/// a scenario model before certifying its inequality.
inline CurvatureHypothesis ckn_hypothesis(CknCase cs, const CknParams& p) {
    using K = CurvatureHypothesis::Kind;
    CurvatureHypothesis h;
    h.shift = p.c;
    switch (cs) {
        case CknCase::flat_nonneg:
            h.kind = K::sec_lower_positive;
            h.B1 = 0;
            break;
        case CknCase::flat_nonpos:
            h.kind = K::sec_upper_positive;
            h.B = 0;
            break;
        case CknCase::flat_zero: h.kind = K::flat; break;
        case CknCase::ric_lower_power:
            h.kind = K::ric_lower_power;
            h.A = p.A;
            break;
        case CknCase::ric_lower_positive:
            h.kind = K::ric_lower_positive;
            h.B1 = p.B1;
            break;
        case CknCase::ric_nonneg:
            h.kind = K::ric_lower_positive;
            h.B1 = 0;
            break;
        case CknCase::k_lower_power:
            h.kind = K::sec_lower_power;
            h.A = p.A;
            break;
        case CknCase::k_upper_power:
            h.kind = K::sec_upper_power;
            h.A1 = p.A1;
            break;
        case CknCase::k_equal_power:
            h.kind = K::equality_power;
            h.A = p.A;
            break;
        case CknCase::k_equal_ratio:
            h.kind = K::equality_power;
            h.A = power_exponent_from_square(p.A);
            break;
        case CknCase::k_lower_positive:
            h.kind = K::sec_lower_positive;
            h.B1 = p.B1;
            break;
        case CknCase::k_upper_positive:
            h.kind = K::sec_upper_positive;
            h.B = p.B;
            break;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Scenario verification with radial test functions
// ---------------------------------------------------------------------------

/// Radial test function compactly supported in (0, T); only radial functions
/// are admitted, so the sphere-area factor cancels from both sides of every
/// inequality and all integrals reduce to one dimension with weight f^{n-1}.
struct CknScenario {
    ModelManifold M;
    double a = 0, b = 0;
    RadialExpr u;
    RadialExpr u_prime;
    double r1 = 0, r2 = 0; ///< support of u
    double quad_tol = 1e-9;
    CknCase hyp = CknCase::flat_zero;
    CknParams params;
};

struct MarginReport {
    double lhs = 0, rhs = 0, slack = 0;
    bool pass = false;
};

namespace detail {

inline double radial_integral(const ModelManifold& M, const std::function<double(double)>& h,
                              double r1, double r2, double tol,
                              const std::vector<double>& cuts) {
    const int nm1 = M.n - 1;
    auto f = [&](double r) {
        return h(r) * std::pow(M.f(r), nm1);
    };
    IntegrateOptions opts;
    opts.tol = tol;
    return integrate_fn(f, r1, r2, opts, cuts);
}

} // namespace detail

/// Two-route identity check: the Bochner-style inequality
///   (1/2) |Int u^2 (r Dr - a - b) / r^{a+b+1}| <= sqrt(I_a I_b)
/// evaluated by quadrature on the model.
inline MarginReport verify_identity_71(const CknScenario& s) {
    const double a = s.a, b = s.b;
    const auto cuts = s.u.breakpoints();
    auto u2 = [&](double r) {
        const double v = s.u.eval(r);
        return v * v;
    };
    const double I_mid = detail::radial_integral(
        s.M,
        [&](double r) {
            const double dr = (s.M.n - 1) * s.M.fprime(r) / s.M.f(r);
            return u2(r) * (r * dr - a - b) / std::pow(r, a + b + 1);
        },
        s.r1, s.r2, s.quad_tol, cuts);
    const double I_a = detail::radial_integral(
        s.M, [&](double r) { return u2(r) / std::pow(r, 2 * a); }, s.r1, s.r2, s.quad_tol, cuts);
    const double I_b = detail::radial_integral(
        s.M,
        [&](double r) {
            const double v = s.u_prime.eval(r);
            return v * v / std::pow(r, 2 * b);
        },
        s.r1, s.r2, s.quad_tol, cuts);
    MarginReport rep;
    rep.lhs = 0.5 * std::abs(I_mid);
    rep.rhs = std::sqrt(std::max(0.0, I_a * I_b));
    rep.slack = rep.rhs - rep.lhs;
    rep.pass = rep.slack >= -10 * s.quad_tol;
    return rep;
}

/// Certify C * I_mid <= sqrt(I_a I_b) for a constant from the table, after
/// checking that the scenario's model actually satisfies the case hypothesis.
inline MarginReport verify_ckn(const CknScenario& s, double C) {
    verify_bounds(s.M, ckn_hypothesis(s.hyp, s.params)); // throws on mismatch
    const auto cuts = s.u.breakpoints();
    auto u2 = [&](double r) {
        const double v = s.u.eval(r);
        return v * v;
    };
    const double I_mid = detail::radial_integral(
        s.M, [&](double r) { return u2(r) / std::pow(r, s.a + s.b + 1); }, s.r1, s.r2,
        s.quad_tol, cuts);
    const double I_a = detail::radial_integral(
        s.M, [&](double r) { return u2(r) / std::pow(r, 2 * s.a); }, s.r1, s.r2, s.quad_tol,
        cuts);
    const double I_b = detail::radial_integral(
        s.M,
        [&](double r) {
            const double v = s.u_prime.eval(r);
            return v * v / std::pow(r, 2 * s.b);
        },
        s.r1, s.r2, s.quad_tol, cuts);
    MarginReport rep;
    rep.lhs = C * I_mid;
    rep.rhs = std::sqrt(std::max(0.0, I_a * I_b));
    rep.slack = rep.rhs - rep.lhs;
    rep.pass = rep.slack >= -1e-6;
    return rep;
}

// ---------------------------------------------------------------------------
// Hardy
// ---------------------------------------------------------------------------

/// ((p - 1 - (n-1)A) / p)^p; requires p > (n-1)A + 1.
inline double hardy_constant(double p, int n, double A) {
    if (!(A >= 1)) throw hypothesis_error("hardy: A must be >= 1");
    if (!(p > (n - 1) * A + 1))
        throw hypothesis_error("hardy: exponent condition fails, need p > (n-1)A + 1");
    return std::pow((p - 1 - (n - 1) * A) / p, p);
}

/// Test family u = r^s chi(r), chi a smooth cutoff; s >= 1 keeps u/r p-integrable.
struct HardyScenario {
    ModelManifold M;
    double p = 2;
    double s = 1;
    double A = 1;
    double rho1 = 1, rho2 = 2; ///< cutoff transition window
    double quad_tol = 1e-9;
};

inline MarginReport verify_hardy(const HardyScenario& sc) {
    if (!(sc.s >= 1)) throw hypothesis_error("hardy: test exponent s must be >= 1");
    const double C = hardy_constant(sc.p, sc.M.n, sc.A);
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::ric_lower_power;
        h.A = sc.A;
        verify_bounds(sc.M, h);
    }
    // u = r^s chi, chi == 1 on [0, rho1], quintic smoothstep down to 0 at rho2
    const double w = sc.rho2 - sc.rho1;
    auto chi = [&](double r) {
        if (r <= sc.rho1) return 1.0;
        if (r >= sc.rho2) return 0.0;
        const double x = (r - sc.rho1) / w;
        return 1.0 - (10 * x * x * x - 15 * x * x * x * x + 6 * x * x * x * x * x);
    };
    auto chi_prime = [&](double r) {
        if (r <= sc.rho1 || r >= sc.rho2) return 0.0;
        const double x = (r - sc.rho1) / w;
        return -(30 * x * x - 60 * x * x * x + 30 * x * x * x * x) / w;
    };
    auto u = [&](double r) { return std::pow(r, sc.s) * chi(r); };
    auto up = [&](double r) {
        return sc.s * std::pow(r, sc.s - 1) * chi(r) + std::pow(r, sc.s) * chi_prime(r);
    };
    const std::vector<double> cuts{sc.rho1, sc.rho2};
    const double lhs_int = detail::radial_integral(
        sc.M, [&](double r) { return std::pow(std::abs(u(r)) / r, sc.p); }, 0.0, sc.rho2,
        sc.quad_tol, cuts);
    const double rhs_int = detail::radial_integral(
        sc.M, [&](double r) { return std::pow(std::abs(up(r)), sc.p); }, 0.0, sc.rho2,
        sc.quad_tol, cuts);
    MarginReport rep;
    rep.lhs = C * lhs_int;
    rep.rhs = rhs_int;
    rep.slack = rep.rhs - rep.lhs;
    rep.pass = rep.slack >= -1e-6;
    return rep;
}

// ---------------------------------------------------------------------------
// The seven derived differential-integral constants C1..C7
// ---------------------------------------------------------------------------

enum class CostaCase { i, ii, iii, iv, v, vi, vii };

/// (a, b) substitution defining each derived inequality; the free parameter
/// feeds cases i..iii, the rest are fixed pairs.
inline std::pair<double, double> costa_ab(CostaCase cs, double free_param) {
    switch (cs) {
        case CostaCase::i: return {free_param + 1, free_param}; // a = b+1
        case CostaCase::ii: return {free_param, free_param + 1}; // b = a+1
        case CostaCase::iii: return {-free_param - 1, free_param}; // a = -b-1
        case CostaCase::iv: return {0, 1};
        case CostaCase::v: return {-1, 1};
        case CostaCase::vi: return {0, 0};
        case CostaCase::vii: return {1, 0};
    }
    throw hypothesis_error("costa: unknown case");
}

/// Each derived constant is the square of the interpolation constant at the
/// case's (a, b); the published tables are fixtures against this route.
inline double costa_constant(CostaCase cs, CknCase row, int n, double free_param = 0,
                             CknParams p = {}) {
    const auto [a, b] = costa_ab(cs, free_param);
    const double C = ckn_constant(row, a, b, n, p);
    return C * C;
}

// ---------------------------------------------------------------------------
// Weighted Sobolev embedding norms
// ---------------------------------------------------------------------------

struct EmbeddingNorms {
    double H_ab = 0;    ///< (Int u^2/r^{2a} + |u'|^2/r^{2b})^{1/2}
    double L_mid = 0;   ///< (Int u^2/r^{a+b+1})^{1/2}
    double D_gamma = 0; ///< (Int |u'|^2/r^{a+b+1})^{1/2}
    bool embedding_ok = false; ///< L_mid <= H_ab / sqrt(2C)
};

/// The arithmetic-geometric-mean step behind the embedding: with constant C
/// from the tables, sqrt(I_a I_b) <= (I_a + I_b)/2 gives
/// C ||u||_mid^2 <= ||u||_H^2 / 2.
inline EmbeddingNorms embedding_norms(const CknScenario& s, double C) {
    const auto cuts = s.u.breakpoints();
    auto u2 = [&](double r) {
        const double v = s.u.eval(r);
        return v * v;
    };
    auto up2 = [&](double r) {
        const double v = s.u_prime.eval(r);
        return v * v;
    };
    const double I_a = detail::radial_integral(
        s.M, [&](double r) { return u2(r) / std::pow(r, 2 * s.a); }, s.r1, s.r2, s.quad_tol,
        cuts);
    const double I_b = detail::radial_integral(
        s.M, [&](double r) { return up2(r) / std::pow(r, 2 * s.b); }, s.r1, s.r2, s.quad_tol,
        cuts);
    const double mid = s.a + s.b + 1;
    const double I_mid = detail::radial_integral(
        s.M, [&](double r) { return u2(r) / std::pow(r, mid); }, s.r1, s.r2, s.quad_tol, cuts);
    const double D_mid = detail::radial_integral(
        s.M, [&](double r) { return up2(r) / std::pow(r, mid); }, s.r1, s.r2, s.quad_tol, cuts);
    EmbeddingNorms out;
    out.H_ab = std::sqrt(std::max(0.0, I_a + I_b));
    out.L_mid = std::sqrt(std::max(0.0, I_mid));
    out.D_gamma = std::sqrt(std::max(0.0, D_mid));
    if (C > 0)
        out.embedding_ok = out.L_mid <= out.H_ab / std::sqrt(2 * C) + 1e-9;
    else
        out.embedding_ok = true; // degenerate constant: nothing to certify
    return out;
}

// ---------------------------------------------------------------------------
// Test-function builders (C^2 piecewise polynomials)
// ---------------------------------------------------------------------------

namespace bumps {

/// ((r - r1)(r2 - r))^3 on [r1, r2], zero outside; C^2 across the seams.
inline RadialExpr cubic_bump(double r1, double r2) {
    if (!(0 < r1 && r1 < r2)) throw domain_error("bump: need 0 < r1 < r2");
    // (r - r1)^3 (r2 - r)^3 expanded: q(r) = (-(r^2) + (r1+r2) r - r1 r2)^3
    const std::vector<double> q{-r1 * r2, r1 + r2, -1.0};
    auto mul = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> z(x.size() + y.size() - 1, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
        return z;
    };
    const auto q3 = mul(q, mul(q, q));
    return rx::piecewise({r1, r2},
                         {rx::constant(0.0), rx::polynomial(q3), rx::constant(0.0)});
}

namespace detail {

// (a0 + a1 r)^k as ascending coefficients
inline std::vector<double> affine_pow(double a0, double a1, int k) {
    std::vector<double> acc{1.0};
    for (int i = 0; i < k; ++i) {
        std::vector<double> z(acc.size() + 1, 0.0);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            z[j] += acc[j] * a0;
            z[j + 1] += acc[j] * a1;
        }
        acc = std::move(z);
    }
    return acc;
}

inline std::vector<double> poly_add(std::vector<double> x, const std::vector<double>& y,
                                    double s) {
    if (x.size() < y.size()) x.resize(y.size(), 0.0);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += s * y[i];
    return x;
}

inline std::vector<double> poly_mul2(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(x.size() + y.size() - 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
    return z;
}

} // namespace detail

/// Quintic-smoothstep rise times the tail (1 - r/R)^m on [r1, r1+w], the bare
/// tail on [r1+w, R]; C^2 at every seam. The two shape parameters (m, R)
/// steer the near-sharpness search toward the exponential-type extremals.
inline RadialExpr rise_tail_bump(double r1, double w, double R, int m) {
    if (!(0 < r1 && r1 + w < R) || m < 3)
        throw domain_error("bump: need 0 < r1, r1 + w < R, m >= 3");
    const double a0 = -r1 / w, a1 = 1.0 / w; // x = (r - r1)/w
    // s(x) = 10x^3 - 15x^4 + 6x^5
    std::vector<double> step = detail::poly_add(
        detail::poly_add(detail::poly_mul2({10.0}, detail::affine_pow(a0, a1, 3)),
                         detail::affine_pow(a0, a1, 4), -15.0),
        detail::affine_pow(a0, a1, 5), 6.0);
    const std::vector<double> tail = detail::affine_pow(1.0, -1.0 / R, m);
    const std::vector<double> rise = detail::poly_mul2(step, tail);
    const double seam = r1 + w;
    return rx::piecewise({r1, seam, R},
                         {rx::constant(0.0), rx::polynomial(rise), rx::polynomial(tail),
                          rx::constant(0.0)});
}

} // namespace bumps

} // namespace rcg
