#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hermite.hpp"

namespace rcg {

class RadialExpr;

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Shape-preserving cubic interpolant (PCHIP slopes). Monotone data stays
/// monotone, which keeps sign certificates free of interpolation wiggles.
class Pchip {
public:
    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw domain_error("grid interpolant needs >= 2 nodes");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw domain_error("grid nodes must be strictly increasing");
        d_.resize(n);
        std::vector<double> h(n - 1), delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            delta[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        if (n == 2) {
            d_[0] = d_[1] = delta[0];
        } else {
            for (std::size_t i = 1; i + 1 < n; ++i) {
                if (delta[i - 1] * delta[i] <= 0.0) {
                    d_[i] = 0.0;
                } else {
                    const double w1 = 2 * h[i] + h[i - 1];
                    const double w2 = h[i] + 2 * h[i - 1];
                    d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            d_[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
            d_[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
    }

    double eval(double x, int order) const {
        const std::size_t i = segment(x);
        const double h = x_[i + 1] - x_[i];
        const double s = (x - x_[i]) / h;
        const double y0 = y_[i], y1 = y_[i + 1];
        const double m0 = d_[i] * h, m1 = d_[i + 1] * h;
        // cubic Hermite coefficients in s
        const double c2 = 3 * (y1 - y0) - 2 * m0 - m1;
        const double c3 = 2 * (y0 - y1) + m0 + m1;
        switch (order) {
            case 0: return y0 + m0 * s + c2 * s * s + c3 * s * s * s;
            case 1: return (m0 + 2 * c2 * s + 3 * c3 * s * s) / h;
            case 2: return (2 * c2 + 6 * c3 * s) / (h * h);
            default: throw domain_error("grid interpolant: derivative order > 2");
        }
    }

    double xmin() const { return x_.front(); }
    double xmax() const { return x_.back(); }

private:
    std::vector<double> x_, y_, d_;

    static double edge_slope(double h0, double h1, double del0, double del1) {
        double d = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
        if (d * del0 <= 0.0) d = 0.0;
        else if (del0 * del1 < 0.0 && std::abs(d) > 3 * std::abs(del0)) d = 3 * del0;
        return d;
    }

    std::size_t segment(double x) const {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - x_.begin());
        if (i == 0) return 0;
        if (i >= x_.size()) return x_.size() - 2;
        return i - 1;
    }
};

struct PowerNode { double coef, exponent; };
struct PowerLogNode { double coef, alpha, beta; };      // c * r^a * ln(e+r)^b
struct TrigNode { double amp, freq; bool sine; };
struct HyperNode { double amp, freq; bool sinh_; };
struct PolyFracNode { std::vector<double> num, den; };  // ascending coefficients
struct ShiftNode { NodePtr inner; double c; };          // r -> inner(c + r)
struct SumNode { NodePtr a, b; };
struct ProductNode { NodePtr a, b; };
struct QuotientNode { NodePtr num, den; };
struct NegNode { NodePtr inner; };
struct GridNode { std::shared_ptr<const Pchip> interp; int order; };
struct CurveNode { std::shared_ptr<const QuinticCurve> curve; int order; };
struct PiecewiseNode { std::vector<double> breaks; std::vector<NodePtr> pieces; };

struct Node {
    std::variant<PowerNode, PowerLogNode, TrigNode, HyperNode, PolyFracNode, ShiftNode,
                 SumNode, ProductNode, QuotientNode, NegNode, GridNode, CurveNode,
                 PiecewiseNode>
        v;
    double tmax = kInf;
};

inline double poly_eval(const std::vector<double>& c, double r) {
    double acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + c[i];
    return acc;
}

inline std::vector<double> poly_deriv(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> p(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
    return p;
}

inline std::vector<double> poly_sub(std::vector<double> a, const std::vector<double>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

} // namespace detail

/// A scalar function of the radius r on the half-open interval (0, T].
///
/// Closed-form kinds (powers, power-logs, trigonometric and hyperbolic waves,
/// polynomial fractions, shifts and the algebraic combinators) differentiate
/// symbolically; sampled kinds (grid, solver curve) differentiate through
/// their interpolant. Values are immutable; evaluation is pure.
class RadialExpr {
public:
    RadialExpr() = default;

    double eval(double r) const {
        check(r);
        return raw_eval(r);
    }
    double operator()(double r) const { return eval(r); }

    /// Exact derivative for closed-form kinds, interpolant derivative for
    /// sampled kinds.
    RadialExpr derivative() const;

    double domain_max() const { return node_ ? node_->tmax : detail::kInf; }

    RadialExpr with_domain(double T) const {
        auto n = std::make_shared<detail::Node>(*node_);
        n->tmax = T;
        return RadialExpr(std::move(n));
    }

    /// Interior nodes where the expression is only piecewise defined; ODE
    /// integration and quadrature restart there.
    std::vector<double> breakpoints() const {
        std::vector<double> bs;
        collect_breaks(node_, 0.0, bs);
        std::sort(bs.begin(), bs.end());
        bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
        return bs;
    }

    friend RadialExpr operator+(const RadialExpr& a, const RadialExpr& b);
    friend RadialExpr operator-(const RadialExpr& a, const RadialExpr& b);
    friend RadialExpr operator*(const RadialExpr& a, const RadialExpr& b);
    friend RadialExpr operator/(const RadialExpr& a, const RadialExpr& b);
    friend RadialExpr operator-(const RadialExpr& a);
    friend RadialExpr operator*(double s, const RadialExpr& a);

    explicit RadialExpr(detail::NodePtr n) : node_(std::move(n)) {}
    const detail::NodePtr& node() const { return node_; }

private:
    detail::NodePtr node_;

    void check(double r) const {
        if (!node_) throw domain_error("RadialExpr: empty expression");
        if (!(r > 0.0))
            throw domain_error("RadialExpr: evaluation at r <= 0 is outside the domain");
        const double T = node_->tmax;
        if (r > T * (1 + 1e-12))
            throw domain_error("RadialExpr: evaluation beyond the declared domain end");
    }

    double raw_eval(double r) const { return eval_node(node_, r); }

    static double eval_node(const detail::NodePtr& n, double r);
    static detail::NodePtr deriv_node(const detail::NodePtr& n);
    static void collect_breaks(const detail::NodePtr& n, double shift, std::vector<double>& out);
};

namespace rx {

inline RadialExpr wrap(detail::Node n) {
    return RadialExpr(std::make_shared<detail::Node>(std::move(n)));
}

inline RadialExpr power(double coef, double exponent) {
    return wrap({detail::PowerNode{coef, exponent}, detail::kInf});
}
inline RadialExpr constant(double c) { return power(c, 0.0); }
/// c * r^alpha * ln(e + r)^beta
inline RadialExpr power_log(double coef, double alpha, double beta) {
    return wrap({detail::PowerLogNode{coef, alpha, beta}, detail::kInf});
}
inline RadialExpr sin(double amp, double freq) {
    return wrap({detail::TrigNode{amp, freq, true}, detail::kInf});
}
inline RadialExpr cos(double amp, double freq) {
    return wrap({detail::TrigNode{amp, freq, false}, detail::kInf});
}
inline RadialExpr sinh(double amp, double freq) {
    return wrap({detail::HyperNode{amp, freq, true}, detail::kInf});
}
inline RadialExpr cosh(double amp, double freq) {
    return wrap({detail::HyperNode{amp, freq, false}, detail::kInf});
}
/// num(r)/den(r) with ascending coefficient vectors.
inline RadialExpr poly_ratio(std::vector<double> num, std::vector<double> den) {
    if (den.empty()) den = {1.0};
    return wrap({detail::PolyFracNode{std::move(num), std::move(den)}, detail::kInf});
}
inline RadialExpr polynomial(std::vector<double> coeffs) {
    return poly_ratio(std::move(coeffs), {1.0});
}
/// r -> inner(c + r), c >= 0.
inline RadialExpr shift(const RadialExpr& inner, double c) {
    if (c < 0) throw domain_error("shift: c must be >= 0");
    double T = inner.domain_max();
    double tmax = std::isinf(T) ? detail::kInf : T - c;
    if (!(tmax > 0)) throw domain_error("shift: empty shifted domain");
    return wrap({detail::ShiftNode{inner.node(), c}, tmax});
}
inline RadialExpr grid(std::vector<double> nodes, std::vector<double> values) {
    auto interp = std::make_shared<const detail::Pchip>(std::move(nodes), std::move(values));
    double tmax = interp->xmax();
    return wrap({detail::GridNode{std::move(interp), 0}, tmax});
}
inline RadialExpr from_curve(std::shared_ptr<const QuinticCurve> c) {
    double tmax = c->tmax();
    return wrap({detail::CurveNode{std::move(c), 0}, tmax});
}
/// Piecewise over (0, b1), [b1, b2), ..., [bk, T]; pieces.size() == breaks.size() + 1.
inline RadialExpr piecewise(std::vector<double> breaks, std::vector<RadialExpr> pieces) {
    if (pieces.size() != breaks.size() + 1)
        throw domain_error("piecewise: need one more piece than breakpoints");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]))
            throw domain_error("piecewise: breakpoints must be strictly increasing");
    double tmax = pieces.back().domain_max();
    std::vector<detail::NodePtr> ps;
    ps.reserve(pieces.size());
    for (auto& p : pieces) ps.push_back(p.node());
    return wrap({detail::PiecewiseNode{std::move(breaks), std::move(ps)}, tmax});
}

} // namespace rx

inline RadialExpr operator+(const RadialExpr& a, const RadialExpr& b) {
    return rx::wrap({detail::SumNode{a.node(), b.node()},
                     std::min(a.domain_max(), b.domain_max())});
}
inline RadialExpr operator-(const RadialExpr& a) {
    return rx::wrap({detail::NegNode{a.node()}, a.domain_max()});
}
inline RadialExpr operator-(const RadialExpr& a, const RadialExpr& b) { return a + (-b); }
inline RadialExpr operator*(const RadialExpr& a, const RadialExpr& b) {
    return rx::wrap({detail::ProductNode{a.node(), b.node()},
                     std::min(a.domain_max(), b.domain_max())});
}
inline RadialExpr operator/(const RadialExpr& a, const RadialExpr& b) {
    return rx::wrap({detail::QuotientNode{a.node(), b.node()},
                     std::min(a.domain_max(), b.domain_max())});
}
inline RadialExpr operator*(double s, const RadialExpr& a) { return rx::constant(s) * a; }

inline double RadialExpr::eval_node(const detail::NodePtr& n, double r) {
    using namespace detail;
    return std::visit(
        [&](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PowerNode>) {
                if (k.exponent == 0.0) return k.coef;
                return k.coef * std::pow(r, k.exponent);
            } else if constexpr (std::is_same_v<K, PowerLogNode>) {
                const double lg = std::log(M_E + r);
                double v = k.coef;
                if (k.alpha != 0.0) v *= std::pow(r, k.alpha);
                if (k.beta != 0.0) v *= std::pow(lg, k.beta);
                return v;
            } else if constexpr (std::is_same_v<K, TrigNode>) {
                return k.amp * (k.sine ? std::sin(k.freq * r) : std::cos(k.freq * r));
            } else if constexpr (std::is_same_v<K, HyperNode>) {
                return k.amp * (k.sinh_ ? std::sinh(k.freq * r) : std::cosh(k.freq * r));
            } else if constexpr (std::is_same_v<K, PolyFracNode>) {
                const double den = poly_eval(k.den, r);
                if (den == 0.0) throw domain_error("poly_ratio: denominator vanishes");
                return poly_eval(k.num, r) / den;
            } else if constexpr (std::is_same_v<K, ShiftNode>) {
                return eval_node(k.inner, k.c + r);
            } else if constexpr (std::is_same_v<K, SumNode>) {
                return eval_node(k.a, r) + eval_node(k.b, r);
            } else if constexpr (std::is_same_v<K, ProductNode>) {
                return eval_node(k.a, r) * eval_node(k.b, r);
            } else if constexpr (std::is_same_v<K, QuotientNode>) {
                const double den = eval_node(k.den, r);
                if (den == 0.0) throw domain_error("quotient: denominator vanishes");
                return eval_node(k.num, r) / den;
            } else if constexpr (std::is_same_v<K, NegNode>) {
                return -eval_node(k.inner, r);
            } else if constexpr (std::is_same_v<K, GridNode>) {
                return k.interp->eval(r, k.order);
            } else if constexpr (std::is_same_v<K, CurveNode>) {
                switch (k.order) {
                    case 0: return k.curve->value(r);
                    case 1: return k.curve->deriv(r);
                    default: return k.curve->deriv2(r);
                }
            } else { // PiecewiseNode
                auto it = std::upper_bound(k.breaks.begin(), k.breaks.end(), r);
                std::size_t idx = static_cast<std::size_t>(it - k.breaks.begin());
                return eval_node(k.pieces[idx], r);
            }
        },
        n->v);
}

inline detail::NodePtr RadialExpr::deriv_node(const detail::NodePtr& n) {
    using namespace detail;
    auto mk = [&](auto kind) {
        return std::make_shared<Node>(Node{std::move(kind), n->tmax});
    };
    return std::visit(
        [&](const auto& k) -> NodePtr {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PowerNode>) {
                if (k.exponent == 0.0) return mk(PowerNode{0.0, 0.0});
                return mk(PowerNode{k.coef * k.exponent, k.exponent - 1.0});
            } else if constexpr (std::is_same_v<K, PowerLogNode>) {
                // d/dr [c r^a ln(e+r)^b] = c a r^{a-1} ln^b + c b r^a ln^{b-1} / (e+r)
                NodePtr first = std::make_shared<Node>(
                    Node{PowerLogNode{k.coef * k.alpha, k.alpha - 1.0, k.beta}, n->tmax});
                if (k.beta == 0.0) return first;
                NodePtr lead = std::make_shared<Node>(
                    Node{PowerLogNode{k.coef * k.beta, k.alpha, k.beta - 1.0}, n->tmax});
                NodePtr invshift = std::make_shared<Node>(Node{
                    ShiftNode{std::make_shared<Node>(Node{PowerNode{1.0, -1.0}, kInf}), M_E},
                    n->tmax});
                NodePtr second =
                    std::make_shared<Node>(Node{ProductNode{lead, invshift}, n->tmax});
                if (k.alpha == 0.0) return second;
                return mk(SumNode{first, second});
            } else if constexpr (std::is_same_v<K, TrigNode>) {
                if (k.sine) return mk(TrigNode{k.amp * k.freq, k.freq, false});
                return mk(TrigNode{-k.amp * k.freq, k.freq, true});
            } else if constexpr (std::is_same_v<K, HyperNode>) {
                return mk(HyperNode{k.amp * k.freq, k.freq, !k.sinh_});
            } else if constexpr (std::is_same_v<K, PolyFracNode>) {
                // (n/d)' = (n'd - nd')/d^2
                auto np = poly_deriv(k.num), dp = poly_deriv(k.den);
                auto num = poly_sub(poly_mul(np, k.den), poly_mul(k.num, dp));
                auto den = poly_mul(k.den, k.den);
                return mk(PolyFracNode{std::move(num), std::move(den)});
            } else if constexpr (std::is_same_v<K, ShiftNode>) {
                return mk(ShiftNode{deriv_node(k.inner), k.c});
            } else if constexpr (std::is_same_v<K, SumNode>) {
                return mk(SumNode{deriv_node(k.a), deriv_node(k.b)});
            } else if constexpr (std::is_same_v<K, ProductNode>) {
                NodePtr l = std::make_shared<Node>(Node{ProductNode{deriv_node(k.a), k.b}, n->tmax});
                NodePtr r = std::make_shared<Node>(Node{ProductNode{k.a, deriv_node(k.b)}, n->tmax});
                return mk(SumNode{l, r});
            } else if constexpr (std::is_same_v<K, QuotientNode>) {
                // (u/v)' = u'/v - u v'/v^2
                NodePtr t1 = std::make_shared<Node>(Node{QuotientNode{deriv_node(k.num), k.den}, n->tmax});
                NodePtr vv = std::make_shared<Node>(Node{ProductNode{k.den, k.den}, n->tmax});
                NodePtr uvp = std::make_shared<Node>(Node{ProductNode{k.num, deriv_node(k.den)}, n->tmax});
                NodePtr t2 = std::make_shared<Node>(Node{QuotientNode{uvp, vv}, n->tmax});
                NodePtr nt2 = std::make_shared<Node>(Node{NegNode{t2}, n->tmax});
                return mk(SumNode{t1, nt2});
            } else if constexpr (std::is_same_v<K, NegNode>) {
                return mk(NegNode{deriv_node(k.inner)});
            } else if constexpr (std::is_same_v<K, GridNode>) {
                if (k.order >= 2)
                    throw domain_error("grid interpolant: third derivative unavailable");
                return mk(GridNode{k.interp, k.order + 1});
            } else if constexpr (std::is_same_v<K, CurveNode>) {
                if (k.order >= 2)
                    throw domain_error("curve: third derivative unavailable");
                return mk(CurveNode{k.curve, k.order + 1});
            } else { // PiecewiseNode
                std::vector<NodePtr> ps;
                ps.reserve(k.pieces.size());
                for (const auto& p : k.pieces) ps.push_back(deriv_node(p));
                return mk(PiecewiseNode{k.breaks, std::move(ps)});
            }
        },
        n->v);
}

inline RadialExpr RadialExpr::derivative() const {
    if (!node_) throw domain_error("RadialExpr: empty expression");
    return RadialExpr(deriv_node(node_));
}

inline void RadialExpr::collect_breaks(const detail::NodePtr& n, double shift,
                                       std::vector<double>& out) {
    using namespace detail;
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PiecewiseNode>) {
                for (double b : k.breaks)
                    if (b - shift > 0) out.push_back(b - shift);
                for (const auto& p : k.pieces) collect_breaks(p, shift, out);
            } else if constexpr (std::is_same_v<K, ShiftNode>) {
                collect_breaks(k.inner, shift + k.c, out);
            } else if constexpr (std::is_same_v<K, SumNode> || std::is_same_v<K, ProductNode>) {
                collect_breaks(k.a, shift, out);
                collect_breaks(k.b, shift, out);
            } else if constexpr (std::is_same_v<K, QuotientNode>) {
                collect_breaks(k.num, shift, out);
                collect_breaks(k.den, shift, out);
            } else if constexpr (std::is_same_v<K, NegNode>) {
                collect_breaks(k.inner, shift, out);
            }
        },
        n->v);
}

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

struct IntegrateOptions {
    double tol = 1e-10;
    /// Exponent s in (-1, 0] of an integrable singularity of the integrand at
    /// the left endpoint. Never auto-detected: a silently misclassified
    /// improper integral would corrupt every downstream certificate.
    std::optional<double> singularity_exponent;
    int max_subdivisions = 200000;
};

namespace detail {

struct SimpsonState {
    int splits = 0;
    int limit = 0;
};

inline double simpson(const std::function<double(double)>& f, double a, double fa, double b,
                      double fb, double fm) {
    (void)f;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double fm, double whole, double tol, int depth,
                    SimpsonState& st) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm))
        throw convergence_error("quadrature: non-finite integrand value (singularity hint needed?)",
                                whole);
    const double left = simpson(f, a, fa, m, fm, flm);
    const double right = simpson(f, m, fm, b, fb, frm);
    const double err = (left + right - whole) / 15.0;
    if (depth > 0 && std::abs(err) <= tol) return left + right + err;
    if (depth > 60 || ++st.splits > st.limit)
        throw convergence_error("quadrature: subdivision limit reached", left + right + err);
    return adapt(f, a, fa, m, fm, flm, left, 0.5 * tol, depth + 1, st) +
           adapt(f, m, fm, b, fb, frm, right, 0.5 * tol, depth + 1, st);
}

inline double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                               double tol, SimpsonState& st) {
    if (!(b > a)) return 0.0;
    // a short composite pass first, so symmetric integrands cannot fool the
    // error estimate on the full interval
    const int base = 8;
    double total = 0.0;
    const double h = (b - a) / base;
    for (int i = 0; i < base; ++i) {
        const double x0 = a + i * h, x1 = (i + 1 == base) ? b : x0 + h;
        const double m = 0.5 * (x0 + x1);
        const double f0 = f(x0), f1 = f(x1), fm = f(m);
        if (!std::isfinite(f0) || !std::isfinite(f1) || !std::isfinite(fm))
            throw convergence_error(
                "quadrature: non-finite integrand value (singularity hint needed?)", total);
        const double whole = simpson(f, x0, f0, x1, f1, fm);
        total += adapt(f, x0, f0, x1, f1, fm, whole, tol / base, 0, st);
    }
    return total;
}

} // namespace detail

/// Adaptive quadrature of a callable over [a, b] with absolute tolerance.
/// An integrable singularity of the integrand at the left endpoint is handled
/// through the substitution x = a + u^m, which the hint exponent selects.
/// a == 0 always routes through the substitution so the integrand is never
/// evaluated at 0.
inline double integrate_fn(const std::function<double(double)>& f, double a, double b,
                           IntegrateOptions opts = {},
                           const std::vector<double>& breakpoints = {}) {
    if (!(a >= 0.0) || !(b >= a)) throw domain_error("integrate: need 0 <= a <= b");
    if (a == b) return 0.0;
    detail::SimpsonState st{0, opts.max_subdivisions};

    std::vector<double> cuts;
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(b);

    double total = 0.0;
    double lo = a;
    bool first = true;
    for (double hi : cuts) {
        const bool substitute = first && (opts.singularity_exponent.has_value() || lo == 0.0);
        if (substitute) {
            const double s = opts.singularity_exponent.value_or(0.0);
            if (!(s > -1.0) || s > 0.0)
                throw domain_error("integrate: singularity exponent must lie in (-1, 0]");
            const int m = std::max(2, static_cast<int>(std::ceil(2.0 / (1.0 + s))));
            const double a0 = lo;
            auto g = [&f, a0, m](double u) -> double {
                if (u == 0.0) return 0.0;
                double um = std::pow(u, m);
                return f(a0 + um) * m * um / u;
            };
            const double ub = std::pow(hi - lo, 1.0 / m);
            total += detail::integrate_smooth(g, 0.0, ub, opts.tol * 0.5, st);
        } else {
            total += detail::integrate_smooth(f, lo, hi, opts.tol * 0.5, st);
        }
        lo = hi;
        first = false;
    }
    return total;
}

/// Quadrature of a RadialExpr; splits at the expression's breakpoints.
inline double integrate(const RadialExpr& e, double a, double b, IntegrateOptions opts = {}) {
    if (b > e.domain_max() * (1 + 1e-12))
        throw domain_error("integrate: b beyond the expression domain");
    return integrate_fn([&e](double r) { return e.eval(r); }, a, b, opts, e.breakpoints());
}

inline double integrate(const RadialExpr& e, double a, double b, double tol) {
    IntegrateOptions opts;
    opts.tol = tol;
    return integrate(e, a, b, opts);
}

} // namespace rcg
