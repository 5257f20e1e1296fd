#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "errors.hpp"
#include "ode.hpp"

namespace rcg {

/// g = kappa f'/f. The pole of g is the first zero of f; the two solutions
/// answer for each other across the transform.
inline RiccatiSolution transform(const JacobiSolution& fsol) {
    const auto& c = *fsol.curve;
    const double kappa = fsol.kappa;
    const RadialExpr Gp = fsol.G.derivative();
    std::vector<double> ts, ws, wps, wpps, gs;
    ts.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double t = c.nodes()[i];
        const double f = c.values()[i];
        if (f <= 0.0) {
            if (ts.size() < 2)
                throw hypothesis_error("transform: f is not positive on its grid");
            break;
        }
        const double fp = c.derivs()[i];
        // w = kappa (f' t - f) / (f t): the difference form keeps the
        // absolute error O(eps kappa / t) instead of O(eps/t^2)
        const double w = kappa * (fp * t - f) / (f * t);
        // node derivatives from the first-order system the transform lands
        // in; the quotient-rule route cancels catastrophically near 0
        const double G = fsol.G.eval(t);
        const double wp = -w * w / kappa - 2.0 * w / t - kappa * G;
        const double wpp =
            -2.0 * w * wp / kappa - 2.0 * wp / t + 2.0 * w / (t * t) - kappa * Gp.eval(t);
        ts.push_back(t);
        gs.push_back(kappa * fp / f);
        ws.push_back(w);
        wps.push_back(wp);
        wpps.push_back(wpp);
    }
    RiccatiSolution out;
    out.G = fsol.G;
    out.kappa = kappa;
    out.grid = ts;
    out.g_values = gs;
    out.pole = (fsol.t_sup < fsol.T) ? std::optional<double>(fsol.t_sup) : std::nullopt;
    out.epsilon = fsol.epsilon;
    out.T = fsol.T;
    out.wcurve = std::make_shared<QuinticCurve>(std::move(ts), std::move(ws), std::move(wps),
                                                std::move(wpps));
    return out;
}

/// f(t) = kappa t exp(Int_eps^t (g/kappa - 1/s) ds); the integrand is the
/// bounded variable w/kappa, so the two separately divergent terms never meet.
/// The tail over [0, eps] contributes 0 by the O(1) normalization.
inline JacobiSolution reverse(const RiccatiSolution& gsol) {
    const auto& c = *gsol.wcurve;
    const double kappa = gsol.kappa;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, c.size()); ++i)
        if (std::abs(c.values()[i]) > 1e8)
            throw hypothesis_error(
                "reverse: g - kappa/t is unbounded near 0; asymptotic condition fails");
    std::vector<double> ts, fs, fps, fpps;
    ts.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double t = c.nodes()[i];
        const double I = c.integral_from_start(t) / kappa;
        const double f = kappa * t * std::exp(I);
        const double g = c.values()[i] + kappa / t;
        const double gp = c.derivs()[i] - kappa / (t * t);
        ts.push_back(t);
        fs.push_back(f);
        fps.push_back(g * f / kappa);
        // f'' = f ((g' + g^2/kappa)/kappa), a calculus identity of the reverser
        fpps.push_back(f * (gp + g * g / kappa) / kappa);
    }
    JacobiSolution out;
    out.G = gsol.G;
    out.kappa = kappa;
    out.grid = ts;
    out.f_values = fs;
    out.fprime_values = fps;
    out.t_sup = gsol.pole.value_or(gsol.T);
    out.epsilon = gsol.epsilon;
    out.T = gsol.T;
    out.curve = std::make_shared<QuinticCurve>(std::move(ts), std::move(fs), std::move(fps),
                                               std::move(fpps));
    return out;
}

/// Scaling equivalence: ftilde = (kappa_new/kappa) f solves the same system
/// with the new initial slope.
inline JacobiSolution rescale_kappa(const JacobiSolution& s, double kappa_new) {
    if (!(kappa_new > 0)) throw hypothesis_error("rescale_kappa: kappa_new must be positive");
    const double c = kappa_new / s.kappa;
    JacobiSolution out = s;
    out.kappa = kappa_new;
    for (auto& v : out.f_values) v *= c;
    for (auto& v : out.fprime_values) v *= c;
    const auto& q = *s.curve;
    std::vector<double> ys = q.values(), yps = q.derivs(), ypps = q.derivs2();
    for (auto& v : ys) v *= c;
    for (auto& v : yps) v *= c;
    for (auto& v : ypps) v *= c;
    out.curve = std::make_shared<QuinticCurve>(q.nodes(), std::move(ys), std::move(yps),
                                               std::move(ypps));
    return out;
}

/// gtilde = (kappa_new/kappa) g solves the Riccati system with kappa_new.
inline RiccatiSolution rescale_kappa(const RiccatiSolution& s, double kappa_new) {
    if (!(kappa_new > 0)) throw hypothesis_error("rescale_kappa: kappa_new must be positive");
    const double c = kappa_new / s.kappa;
    RiccatiSolution out = s;
    out.kappa = kappa_new;
    for (auto& v : out.g_values) v *= c;
    const auto& q = *s.wcurve;
    std::vector<double> ys = q.values(), yps = q.derivs(), ypps = q.derivs2();
    for (auto& v : ys) v *= c;
    for (auto& v : yps) v *= c;
    for (auto& v : ypps) v *= c;
    out.wcurve = std::make_shared<QuinticCurve>(q.nodes(), std::move(ys), std::move(yps),
                                                std::move(ypps));
    return out;
}

} // namespace rcg
