#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hermite.hpp"
#include "radial.hpp"

namespace rcg {

struct SolverOptions {
    double epsilon = -1.0;   ///< start of integration; < 0 selects 1e-6 * min(1, T)
    double res_tol = 1e-8;   ///< residual budget the stored solution must meet
    double root_tol = 1e-9;  ///< bisection tolerance for first zeros and poles
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double max_step = -1.0;  ///< < 0 selects (T - epsilon) / 64
    double fixed_step = 0.0; ///< > 0 disables step control (order-convergence runs)
    enum class SeedHint { automatic, bounded, singular } seed = SeedHint::automatic;
    std::size_t max_steps = 4000000;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N, class F>
void dopri_step(const F& rhs, double t, const Vec<N>& y, double h, Vec<N>& y5, Vec<N>& k1,
                Vec<N>& k_next, double& err_norm, double atol, double rtol) {
    using D = Dopri;
    Vec<N> k2, k3, k4, k5, k6, k7, tmp;
    auto axpy = [&](const Vec<N>& base, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
        tmp = base;
        for (auto& [c, kk] : terms)
            for (std::size_t i = 0; i < N; ++i) tmp[i] += h * c * (*kk)[i];
        return tmp;
    };
    k2 = rhs(t + D::c2 * h, axpy(y, {{D::a21, &k1}}));
    k3 = rhs(t + D::c3 * h, axpy(y, {{D::a31, &k1}, {D::a32, &k2}}));
    k4 = rhs(t + D::c4 * h, axpy(y, {{D::a41, &k1}, {D::a42, &k2}, {D::a43, &k3}}));
    k5 = rhs(t + D::c5 * h, axpy(y, {{D::a51, &k1}, {D::a52, &k2}, {D::a53, &k3}, {D::a54, &k4}}));
    k6 = rhs(t + h, axpy(y, {{D::a61, &k1}, {D::a62, &k2}, {D::a63, &k3}, {D::a64, &k4}, {D::a65, &k5}}));
    for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] + h * (D::b1 * k1[i] + D::b3 * k3[i] + D::b4 * k4[i] + D::b5 * k5[i] +
                            D::b6 * k6[i]);
    k7 = rhs(t + h, y5);
    err_norm = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double e = h * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] + D::e5 * k5[i] +
                              D::e6 * k6[i] + D::e7 * k7[i]);
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err_norm = std::max(err_norm, std::abs(e) / sc);
    }
    k_next = k7;
}

inline std::vector<double> segment_ends(const RadialExpr& G, double t0, double T) {
    std::vector<double> ends;
    for (double b : G.breakpoints())
        if (b > t0 && b < T) ends.push_back(b);
    ends.push_back(T);
    return ends;
}

} // namespace detail

/// Solution of f'' + G f = 0 on (0, T] seeded at t0 = epsilon with
/// f(0) = 0, f'(0) = kappa. t_sup is the first zero of f past 0, or the
/// domain end when f stays positive.
struct JacobiSolution {
    RadialExpr G;
    double kappa = 1.0;
    std::vector<double> grid;
    std::vector<double> f_values;
    std::vector<double> fprime_values;
    double t_sup = 0.0;
    double epsilon = 0.0;
    double T = 0.0;
    std::shared_ptr<const QuinticCurve> curve;

    double f(double t) const { return curve->value(t); }
    double fprime(double t) const { return curve->deriv(t); }
    double fsecond(double t) const { return curve->deriv2(t); }
    double end() const { return curve->tmax(); }
};

/// Solution of g' + g^2/kappa + kappa G = 0 with g(t) = kappa/t + O(1).
/// Stored through the bounded variable w = g - kappa/t (w(epsilon) = 0), so
/// the 1/t parts never cancel catastrophically downstream.
struct RiccatiSolution {
    RadialExpr G;
    double kappa = 1.0;
    std::vector<double> grid;
    std::vector<double> g_values;
    std::optional<double> pole; ///< finite-time blow-up of g, if found
    double epsilon = 0.0;
    double T = 0.0;
    std::shared_ptr<const QuinticCurve> wcurve;

    double w(double t) const { return wcurve->value(t); }
    double wprime(double t) const { return wcurve->deriv(t); }
    double g(double t) const { return wcurve->value(t) + kappa / t; }
    double gprime(double t) const { return wcurve->deriv(t) - kappa / (t * t); }
    double end() const { return wcurve->tmax(); }
};

namespace detail {

inline double default_epsilon(double T, const SolverOptions& o) {
    if (o.epsilon > 0) return o.epsilon;
    return 1e-6 * std::min(1.0, T);
}

enum class SeedKind { series, linear };

inline SeedKind choose_seed(const RadialExpr& G, double t0, SolverOptions::SeedHint hint) {
    if (hint == SolverOptions::SeedHint::bounded) return SeedKind::series;
    if (hint == SolverOptions::SeedHint::singular) return SeedKind::linear;
    // probe near zero; reject the non-integrable case rather than guess
    const double g1 = std::abs(G.eval(t0));
    const double g2 = std::abs(G.eval(t0 / 4));
    const double g3 = std::abs(G.eval(t0 / 16));
    if (g3 <= 10.0 * (g1 + 1.0)) return SeedKind::series;
    if (g2 > 0 && g3 > 0) {
        const double growth = std::log(g3 / g2) / std::log(4.0); // G ~ r^{-growth}
        if (growth >= 0.999)
            throw seed_error(
                "solve: coefficient grows like r^-" + std::to_string(growth) +
                " near 0; pass SeedHint::singular to use the linear seed");
    }
    return SeedKind::linear;
}

} // namespace detail

inline JacobiSolution solve_jacobi(const RadialExpr& G, double kappa, double T,
                                   SolverOptions opts = {}) {
    if (!(kappa > 0)) throw hypothesis_error("solve_jacobi: kappa must be positive");
    if (!(T > 0) || std::isinf(T)) throw domain_error("solve_jacobi: need finite T > 0");
    const double t0 = detail::default_epsilon(T, opts);
    const double hmax = opts.fixed_step > 0
                            ? opts.fixed_step
                            : (opts.max_step > 0 ? opts.max_step : (T - t0) / 64.0);

    const detail::SeedKind seed = detail::choose_seed(G, t0, opts.seed);
    detail::Vec<2> y;
    if (seed == detail::SeedKind::series) {
        const double g0 = G.eval(t0);
        y = {kappa * t0 - kappa * g0 * t0 * t0 * t0 / 6.0,
             kappa - kappa * g0 * t0 * t0 / 2.0};
    } else {
        y = {kappa * t0, kappa};
    }

    auto rhs = [&G](double t, const detail::Vec<2>& s) -> detail::Vec<2> {
        return {s[1], -G.eval(t) * s[0]};
    };

    std::vector<double> ts{t0}, fs{y[0]}, fps{y[1]}, fpps{-G.eval(t0) * y[0]};
    double t = t0;
    double h = opts.fixed_step > 0 ? opts.fixed_step : std::min(hmax, (T - t0) / 256.0);
    detail::Vec<2> k1 = rhs(t, y);
    std::size_t steps = 0;
    bool crossed = false;
    double zero_at = T;

    for (double seg_end : detail::segment_ends(G, t0, T)) {
        if (crossed) break;
        if (t >= seg_end) continue;
        k1 = rhs(t, y); // restart derivative at piecewise boundaries
        while (t < seg_end) {
            if (seg_end - t <= 1e-12 * std::max(1.0, seg_end)) break;
            if (++steps > opts.max_steps)
                throw convergence_error("solve_jacobi: step limit reached at t=" + std::to_string(t), t);
            double hs = std::min({h, hmax, seg_end - t});
            // geometric growth near the singular end keeps the stored grid
            // dense where 1/t-scale quantities would amplify rounding noise
            if (opts.fixed_step <= 0) hs = std::min(hs, 0.5 * t);
            if (hs < 1e-15 * std::max(1.0, t))
                throw convergence_error("solve_jacobi: step size underflow at t=" + std::to_string(t), t);
            detail::Vec<2> y5, knext;
            double err;
            detail::dopri_step<2>(rhs, t, y, hs, y5, k1, knext, err, opts.abs_tol, opts.rel_tol);
            if (opts.fixed_step <= 0 && err > 1.0) {
                h = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
                continue;
            }
            t += hs;
            y = y5;
            k1 = knext;
            ts.push_back(t);
            fs.push_back(y[0]);
            fps.push_back(y[1]);
            fpps.push_back(-G.eval(t) * y[0]);
            if (opts.fixed_step <= 0)
                h = hs * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
            if (y[0] <= 0.0) { crossed = true; break; }
        }
    }

    auto curve = std::make_shared<QuinticCurve>(ts, fs, fps, fpps);
    if (crossed) {
        // bisect the last step for the first zero
        double lo = ts[ts.size() - 2], hi = ts.back();
        while (hi - lo > opts.root_tol) {
            const double mid = 0.5 * (lo + hi);
            (curve->value(mid) > 0 ? lo : hi) = mid;
        }
        zero_at = 0.5 * (lo + hi);
        // drop nodes past the zero and pin the endpoint
        std::vector<double> t2, f2, fp2, fpp2;
        for (std::size_t i = 0; i < ts.size() && ts[i] < zero_at; ++i) {
            t2.push_back(ts[i]);
            f2.push_back(fs[i]);
            fp2.push_back(fps[i]);
            fpp2.push_back(fpps[i]);
        }
        // keep the endpoint consistent with the interpolant: a clamped value
        // would be amplified by 1/h^2 in the stored second derivative
        t2.push_back(zero_at);
        f2.push_back(curve->value(zero_at));
        fp2.push_back(curve->deriv(zero_at));
        fpp2.push_back(-G.eval(zero_at) * f2.back());
        curve = std::make_shared<QuinticCurve>(t2, f2, fp2, fpp2);
        ts = std::move(t2);
        fs = std::move(f2);
        fps = std::move(fp2);
    }

    JacobiSolution sol;
    sol.G = G;
    sol.kappa = kappa;
    sol.grid = std::move(ts);
    sol.f_values = std::move(fs);
    sol.fprime_values = std::move(fps);
    sol.t_sup = crossed ? zero_at : T;
    sol.epsilon = t0;
    sol.T = T;
    sol.curve = std::move(curve);
    return sol;
}

inline RiccatiSolution solve_riccati(const RadialExpr& G, double kappa, double T,
                                     SolverOptions opts = {}) {
    if (!(kappa > 0)) throw hypothesis_error("solve_riccati: kappa must be positive");
    if (!(T > 0) || std::isinf(T)) throw domain_error("solve_riccati: need finite T > 0");
    const double t0 = detail::default_epsilon(T, opts);
    const double hmax = opts.fixed_step > 0
                            ? opts.fixed_step
                            : (opts.max_step > 0 ? opts.max_step : (T - t0) / 64.0);
    const RadialExpr Gp = G.derivative();

    // w' = -w^2/kappa - 2w/t - kappa G(t), w(t0) = 0 (the O(1) normalization)
    auto rhs = [&](double t, const detail::Vec<1>& s) -> detail::Vec<1> {
        return {-s[0] * s[0] / kappa - 2.0 * s[0] / t - kappa * G.eval(t)};
    };
    auto wsecond = [&](double t, double w, double wp) {
        return -2.0 * w * wp / kappa - 2.0 * wp / t + 2.0 * w / (t * t) - kappa * Gp.eval(t);
    };

    detail::Vec<1> y = {0.0};
    std::vector<double> ts{t0}, ws{0.0}, wps{rhs(t0, y)[0]};
    std::vector<double> wpps{wsecond(t0, 0.0, wps[0])};
    double t = t0;
    double h = opts.fixed_step > 0 ? opts.fixed_step : std::min(hmax, (T - t0) / 256.0);
    detail::Vec<1> k1 = rhs(t, y);
    std::size_t steps = 0;
    std::optional<double> pole;
    const double blow = 1e3 * std::max(1.0, kappa);

    for (double seg_end : detail::segment_ends(G, t0, T)) {
        if (pole) break;
        if (t >= seg_end) continue;
        k1 = rhs(t, y);
        while (t < seg_end) {
            if (seg_end - t <= 1e-12 * std::max(1.0, seg_end)) break;
            if (++steps > opts.max_steps)
                throw convergence_error("solve_riccati: step limit reached at t=" + std::to_string(t), t);
            double hs = std::min({h, hmax, seg_end - t});
            if (opts.fixed_step <= 0) hs = std::min(hs, 0.5 * t);
            if (hs < 1e-15 * std::max(1.0, t))
                throw convergence_error("solve_riccati: step size underflow at t=" + std::to_string(t), t);
            detail::Vec<1> y5, knext;
            double err;
            detail::dopri_step<1>(rhs, t, y, hs, y5, k1, knext, err, opts.abs_tol, opts.rel_tol);
            if (opts.fixed_step <= 0 && err > 1.0) {
                h = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
                continue;
            }
            t += hs;
            y = y5;
            k1 = knext;
            ts.push_back(t);
            ws.push_back(y[0]);
            wps.push_back(k1[0]);
            wpps.push_back(wsecond(t, y[0], k1[0]));
            if (opts.fixed_step <= 0)
                h = hs * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
            if (y[0] + kappa / t < -blow) {
                // g is blowing down; chase the pole through v = 1/g:
                // v' = 1/kappa + kappa G v^2, pole at v = 0.
                double vt = t;
                detail::Vec<1> v = {1.0 / (y[0] + kappa / t)};
                auto vrhs = [&](double tt, const detail::Vec<1>& s) -> detail::Vec<1> {
                    return {1.0 / kappa + kappa * G.eval(tt) * s[0] * s[0]};
                };
                detail::Vec<1> vk1 = vrhs(vt, v);
                double vh = std::min(hmax, -v[0] * kappa * 0.5);
                while (v[0] < 0.0 && vt < seg_end) {
                    detail::Vec<1> v5, vknext;
                    double verr;
                    detail::dopri_step<1>(vrhs, vt, v, vh, v5, vk1, vknext, verr, opts.abs_tol,
                                          opts.rel_tol);
                    if (verr > 1.0) {
                        vh *= std::max(0.2, 0.9 * std::pow(verr, -0.2));
                        continue;
                    }
                    if (v5[0] >= 0.0) {
                        double lo = vt, hi = vt + vh;
                        double flo = v[0];
                        // secant refinement on the near-linear v
                        for (int it = 0; it < 80 && hi - lo > opts.root_tol; ++it) {
                            const double mid = 0.5 * (lo + hi);
                            detail::Vec<1> vm, dummy;
                            double e2;
                            detail::Vec<1> km = vrhs(lo, {flo});
                            detail::dopri_step<1>(vrhs, lo, {flo}, mid - lo, vm, km, dummy, e2,
                                                  opts.abs_tol, opts.rel_tol);
                            if (vm[0] < 0) { lo = mid; flo = vm[0]; }
                            else hi = mid;
                        }
                        pole = 0.5 * (lo + hi);
                        break;
                    }
                    vt += vh;
                    v = v5;
                    vk1 = vknext;
                    vh = std::min(vh * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(verr, 1e-10), -0.2))),
                                  seg_end - vt > 0 ? seg_end - vt : vh);
                    if (vh <= 0) break;
                }
                if (!pole) pole = vt; // blow-up at segment end
                break;
            }
        }
    }

    RiccatiSolution sol;
    sol.G = G;
    sol.kappa = kappa;
    sol.grid = ts;
    sol.g_values.resize(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) sol.g_values[i] = ws[i] + kappa / ts[i];
    sol.pole = pole;
    sol.epsilon = t0;
    sol.T = T;
    sol.wcurve = std::make_shared<QuinticCurve>(std::move(ts), std::move(ws), std::move(wps),
                                                std::move(wpps));
    return sol;
}

// ---------------------------------------------------------------------------
// Candidate builders: supersolutions and subsolutions are never solved for,
// they are sampled from closed forms and checked by the comparison module.
// ---------------------------------------------------------------------------

inline JacobiSolution make_jacobi_candidate(const RadialExpr& f, const RadialExpr& G,
                                            double kappa, double t0, double T,
                                            std::size_t nodes = 1024) {
    if (!(kappa > 0)) throw hypothesis_error("jacobi candidate: kappa must be positive");
    if (!(t0 > 0 && T > t0)) throw domain_error("jacobi candidate: need 0 < t0 < T");
    const RadialExpr fp = f.derivative();
    const RadialExpr fpp = fp.derivative();
    std::vector<double> ts(nodes), ys(nodes), yps(nodes), ypps(nodes);
    double t_sup = T;
    std::size_t used = nodes;
    const double ratio = std::pow(T / t0, 1.0 / static_cast<double>(nodes - 1));
    for (std::size_t i = 0; i < nodes; ++i) {
        // geometric spacing keeps 1/t-type candidates accurate near the seed
        const double t = (i + 1 == nodes) ? T : t0 * std::pow(ratio, static_cast<double>(i));
        const double v = f.eval(t);
        if (v <= 0.0) { t_sup = t; used = i; break; }
        ts[i] = t; ys[i] = v; yps[i] = fp.eval(t); ypps[i] = fpp.eval(t);
    }
    if (used < 2) throw domain_error("jacobi candidate: not positive on the requested interval");
    ts.resize(used == nodes ? nodes : used);
    ys.resize(ts.size()); yps.resize(ts.size()); ypps.resize(ts.size());
    JacobiSolution sol;
    sol.G = G;
    sol.kappa = kappa;
    sol.grid = ts;
    sol.f_values = ys;
    sol.fprime_values = yps;
    sol.t_sup = t_sup;
    sol.epsilon = t0;
    sol.T = T;
    sol.curve = std::make_shared<QuinticCurve>(std::move(ts), std::move(ys), std::move(yps),
                                               std::move(ypps));
    return sol;
}

inline RiccatiSolution make_riccati_candidate(const RadialExpr& g, const RadialExpr& G,
                                              double kappa, double t0, double T,
                                              std::size_t nodes = 1024) {
    if (!(kappa > 0)) throw hypothesis_error("riccati candidate: kappa must be positive");
    if (!(t0 > 0 && T > t0)) throw domain_error("riccati candidate: need 0 < t0 < T");
    const RadialExpr gp = g.derivative();
    const RadialExpr gpp = gp.derivative();
    std::vector<double> ts(nodes), ws(nodes), wps(nodes), wpps(nodes);
    const double ratio = std::pow(T / t0, 1.0 / static_cast<double>(nodes - 1));
    for (std::size_t i = 0; i < nodes; ++i) {
        const double t = (i + 1 == nodes) ? T : t0 * std::pow(ratio, static_cast<double>(i));
        ts[i] = t;
        ws[i] = g.eval(t) - kappa / t;
        wps[i] = gp.eval(t) + kappa / (t * t);
        wpps[i] = gpp.eval(t) - 2.0 * kappa / (t * t * t);
    }
    RiccatiSolution sol;
    sol.G = G;
    sol.kappa = kappa;
    sol.grid = ts;
    sol.g_values.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) sol.g_values[i] = ws[i] + kappa / ts[i];
    sol.pole = std::nullopt;
    sol.epsilon = t0;
    sol.T = T;
    sol.wcurve = std::make_shared<QuinticCurve>(std::move(ts), std::move(ws), std::move(wps),
                                                std::move(wpps));
    return sol;
}

// ---------------------------------------------------------------------------
// Residuals, measured on the stored curve at interior collocation points.
// ---------------------------------------------------------------------------

struct ResidualRange {
    double min = 0.0, max = 0.0;
    double max_abs() const { return std::max(std::abs(min), std::abs(max)); }
};

/// Residuals are measured relative to the local size of the equation terms,
/// which coincides with the absolute residual when the terms are O(1). The
/// singular-seed solutions reach amplitudes of order 1/epsilon, where an
/// absolute budget would be below double-precision resolution.
inline ResidualRange jacobi_residual_range(const JacobiSolution& s, std::size_t samples = 512) {
    ResidualRange rr{1e300, -1e300};
    const double a = s.curve->tmin(), b = s.curve->tmax();
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = a + (b - a) * (i + 0.37) / samples; // off the nodes
        const double gf = s.G.eval(t) * s.curve->value(t);
        const double res = (s.curve->deriv2(t) + gf) / std::max(1.0, std::abs(gf));
        rr.min = std::min(rr.min, res);
        rr.max = std::max(rr.max, res);
    }
    return rr;
}

inline ResidualRange riccati_residual_range(const RiccatiSolution& s, std::size_t samples = 512) {
    ResidualRange rr{1e300, -1e300};
    const double a = s.wcurve->tmin(), b = s.wcurve->tmax();
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = a + (b - a) * (i + 0.37) / samples;
        const double g = s.g(t);
        const double scale = std::max(1.0, g * g / s.kappa + std::abs(s.kappa * s.G.eval(t)));
        const double res = (s.gprime(t) + g * g / s.kappa + s.kappa * s.G.eval(t)) / scale;
        rr.min = std::min(rr.min, res);
        rr.max = std::max(rr.max, res);
    }
    return rr;
}

inline double jacobi_max_residual(const JacobiSolution& s, std::size_t samples = 512) {
    return jacobi_residual_range(s, samples).max_abs();
}
inline double riccati_max_residual(const RiccatiSolution& s, std::size_t samples = 512) {
    return riccati_residual_range(s, samples).max_abs();
}

} // namespace rcg
