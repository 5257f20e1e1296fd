#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "growth.hpp"
#include "model.hpp"
#include "radial.hpp"

namespace rcg {

// ---------------------------------------------------------------------------
// F-degree and F-lower degree
// ---------------------------------------------------------------------------

/// Integrand profile F with F(0) = 0 and F' > 0 on its domain. The catalog
/// covers the identity, the p-power family F(t) = (2t)^{p/2}/p, and the two
/// square-root energies sqrt(1+2t)-1 and 1-sqrt(1-2t) (domain t < 1/2).
struct FKind {
    enum class Tag { identity, p_power, born_infeld_plus, born_infeld_minus, grid } tag =
        Tag::identity;
    double p = 2;
    std::vector<double> ts, Fs; ///< samples for Tag::grid

    double domain_max() const {
        return tag == Tag::born_infeld_minus ? 0.5 : std::numeric_limits<double>::infinity();
    }

    double F(double t) const {
        check_domain(t);
        switch (tag) {
            case Tag::identity: return t;
            case Tag::p_power: return std::pow(2 * t, p / 2) / p;
            case Tag::born_infeld_plus: return std::sqrt(1 + 2 * t) - 1;
            case Tag::born_infeld_minus: return 1 - std::sqrt(1 - 2 * t);
            case Tag::grid: return interp().eval(t, 0);
        }
        return 0;
    }

    double Fprime(double t) const {
        check_domain(t);
        switch (tag) {
            case Tag::identity: return 1;
            case Tag::p_power: return std::pow(2 * t, p / 2 - 1);
            case Tag::born_infeld_plus: return 1 / std::sqrt(1 + 2 * t);
            case Tag::born_infeld_minus: return 1 / std::sqrt(1 - 2 * t);
            case Tag::grid: return interp().eval(t, 1);
        }
        return 0;
    }

    void check_domain(double t) const {
        if (t < 0) throw domain_error("F: negative argument");
        if (tag == Tag::born_infeld_minus && t >= 0.5)
            throw domain_error("F: argument beyond t = 1/2, outside the square-root domain");
    }

    const detail::Pchip& interp() const {
        if (!interp_) interp_ = std::make_shared<detail::Pchip>(ts, Fs);
        return *interp_;
    }

private:
    mutable std::shared_ptr<detail::Pchip> interp_;
};

inline FKind f_identity() { return FKind{}; }
inline FKind f_p_power(double p) {
    if (!(p > 1)) throw hypothesis_error("p-power energy: need p > 1");
    FKind f;
    f.tag = FKind::Tag::p_power;
    f.p = p;
    return f;
}
inline FKind f_born_infeld_plus() {
    FKind f;
    f.tag = FKind::Tag::born_infeld_plus;
    return f;
}
inline FKind f_born_infeld_minus() {
    FKind f;
    f.tag = FKind::Tag::born_infeld_minus;
    return f;
}
inline FKind f_grid(std::vector<double> ts, std::vector<double> Fs) {
    FKind f;
    f.tag = FKind::Tag::grid;
    f.ts = std::move(ts);
    f.Fs = std::move(Fs);
    for (std::size_t i = 0; i < f.ts.size(); ++i) {
        if (f.ts[i] > 0 && !(f.Fs[i] > 0))
            throw hypothesis_error("grid energy: F must be positive for t > 0");
        if (i > 0 && !(f.Fs[i] > f.Fs[i - 1]))
            throw hypothesis_error("grid energy: F' > 0 fails at a sample");
    }
    return f;
}

namespace detail {

inline double degree_ratio(const FKind& f, double t) {
    return t * f.Fprime(t) / f.F(t);
}

inline std::pair<double, double> degree_extrema_numeric(const FKind& f) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    const double tmax = std::isinf(f.domain_max())
                            ? 1e6
                            : f.domain_max() * (1 - 1e-9);
    double tmin = 1e-6;
    if (f.tag == FKind::Tag::grid) tmin = std::max(tmin, f.ts.front() + 1e-12);
    const int N = 2048;
    for (int i = 0; i <= N; ++i) {
        const double t = tmin * std::pow(tmax / tmin, static_cast<double>(i) / N);
        const double q = degree_ratio(f, t);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    return {hi, lo};
}

} // namespace detail

/// sup of t F'(t)/F(t) over the domain; closed forms for the catalog kinds,
/// numeric sup over a log grid for sampled F. The minus-sign square-root
/// energy is unbounded (ratio -> infinity at t -> 1/2).
inline double f_degree(const FKind& f) {
    switch (f.tag) {
        case FKind::Tag::identity: return 1.0;
        case FKind::Tag::p_power: return f.p / 2;
        case FKind::Tag::born_infeld_plus: return 1.0;                  // limit t -> 0
        case FKind::Tag::born_infeld_minus: return std::numeric_limits<double>::infinity();
        case FKind::Tag::grid: return detail::degree_extrema_numeric(f).first;
    }
    return 0;
}

/// inf of t F'(t)/F(t); 1/2 for the plus-sign square-root energy (t -> inf).
inline double f_lower_degree(const FKind& f) {
    switch (f.tag) {
        case FKind::Tag::identity: return 1.0;
        case FKind::Tag::p_power: return f.p / 2;
        case FKind::Tag::born_infeld_plus: return 0.5;
        case FKind::Tag::born_infeld_minus: return 1.0; // limit t -> 0
        case FKind::Tag::grid: return detail::degree_extrema_numeric(f).second;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Monotonicity exponent table
// ---------------------------------------------------------------------------

/// The seven curvature rows of the monotonicity table, ordered as the
/// conditions are listed: (i) two-sided power, (ii) two-sided ratio,
/// (iii) positive pinch, (iv) quarter pinch, (v) constant pinch, (vi) flat,
/// (vii) decaying pinch.
enum class CurvRow {
    two_sided_power,
    two_sided_ratio,
    pinch_positive,
    pinch_quarter,
    const_pinch,
    flat,
    decay_pinch
};

inline const char* to_string(CurvRow r) {
    switch (r) {
        case CurvRow::two_sided_power: return "two-sided-power";
        case CurvRow::two_sided_ratio: return "two-sided-ratio";
        case CurvRow::pinch_positive: return "pinch-positive";
        case CurvRow::pinch_quarter: return "pinch-quarter";
        case CurvRow::const_pinch: return "const-pinch";
        case CurvRow::flat: return "flat";
        case CurvRow::decay_pinch: return "decay-pinch";
    }
    return "?";
}

struct LambdaQuery {
    CurvRow row = CurvRow::flat;
    int k = 1;      ///< form degree >= 1
    double dF = 1;  ///< F-degree of the energy integrand
    int n = 3;      ///< dimension
    double A = 0, A1 = 0, B = 0, B1 = 0;
    double alpha = 1, beta = 1, eps = 1;
};

namespace detail {

inline double lambda_raw(const LambdaQuery& q) {
    const double n = q.n, kdF = q.k * q.dF;
    switch (q.row) {
        case CurvRow::two_sided_power:
            return 1 + (n - 1) * q.A1 - 2 * kdF * q.A;
        case CurvRow::two_sided_ratio:
            return 1 + (n - 1) * (1 + std::sqrt(1 + 4 * q.A1)) / 2 -
                   kdF * (1 + std::sqrt(1 + 4 * q.A));
        case CurvRow::pinch_positive:
            return 1 + (n - 1) * (std::abs(q.B - 0.5) + 0.5) -
                   kdF * (1 + std::sqrt(1 + 4 * q.B1 * (1 - q.B1)));
        case CurvRow::pinch_quarter:
            return 1 + (n - 1) * (1 + std::sqrt(1 - 4 * q.B)) / 2 -
                   kdF * (1 + std::sqrt(1 + 4 * q.B1));
        case CurvRow::const_pinch:
            return n - 2 * kdF * (q.alpha / q.beta);
        case CurvRow::flat:
            return n - 2 * kdF;
        case CurvRow::decay_pinch:
            return n - (n - 1) * q.B / (2 * q.eps) - 2 * q.k * std::exp(q.A / (2 * q.eps)) * q.dF;
    }
    return 0;
}

inline void lambda_validate(const LambdaQuery& q) {
    auto bad = [&](const std::string& msg) {
        throw hypothesis_error(std::string("lambda row ") + to_string(q.row) +
                               " not applicable: " + msg);
    };
    if (q.k < 1) bad("form degree k must be >= 1");
    if (!(q.dF > 0)) bad("F-degree must be positive");
    switch (q.row) {
        case CurvRow::two_sided_power:
            if (!(q.A >= q.A1 && q.A1 >= 1)) bad("need A >= A1 >= 1");
            break;
        case CurvRow::two_sided_ratio:
            if (!(q.A >= q.A1 && q.A1 >= 0)) bad("need A >= A1 >= 0");
            break;
        case CurvRow::pinch_positive:
            if (!(q.B1 >= 0 && q.B1 <= 1 && q.B >= 0 && q.B <= 1)) bad("need 0 <= B1, B <= 1");
            break;
        case CurvRow::pinch_quarter:
            if (!(q.B1 >= 0 && q.B1 <= q.B && q.B <= 0.25)) bad("need 0 <= B1 <= B <= 1/4");
            break;
        case CurvRow::const_pinch: {
            if (!(q.alpha > 0 && q.beta > 0)) bad("need alpha, beta > 0");
            if (!((q.n - 1) * q.beta - 2 * q.k * q.alpha * q.dF >= 0))
                bad("need (n-1) beta - 2 k alpha dF >= 0");
            return; // side condition is the >= 0 form, lambda >= 1 follows
        }
        case CurvRow::flat:
            break;
        case CurvRow::decay_pinch:
            if (!(q.eps > 0 && q.A >= 0 && q.B >= 0 && q.B < 2 * q.eps))
                bad("need eps > 0, A >= 0, 0 <= B < 2 eps");
            break;
    }
    if (!(lambda_raw(q) > 0)) bad("positivity side condition lambda > 0 fails");
}

} // namespace detail

/// Master monotonicity exponent; throws a non-applicability error naming the
/// row when its side condition fails.
inline double lambda_exponent(const LambdaQuery& q) {
    detail::lambda_validate(q);
    return detail::lambda_raw(q);
}

inline bool lambda_applicable(const LambdaQuery& q) {
    try {
        detail::lambda_validate(q);
        return true;
    } catch (const hypothesis_error&) {
        return false;
    }
}

// Published specializations, transcribed row by row; the coherence tests pin
// each against the master formula (k, dF substitution), exactly.

/// 2-form energy with dF = p/2 (the p-th power curvature energy).
inline double lambda_p_yang_mills(CurvRow row, double p, int n, const LambdaQuery& params) {
    const double nn = n;
    switch (row) {
        case CurvRow::two_sided_power: return 1 + (nn - 1) * params.A1 - 2 * p * params.A;
        case CurvRow::two_sided_ratio:
            return 1 + (nn - 1) * (1 + std::sqrt(1 + 4 * params.A1)) / 2 -
                   p * (1 + std::sqrt(1 + 4 * params.A));
        case CurvRow::pinch_positive:
            return 1 + (nn - 1) * (std::abs(params.B - 0.5) + 0.5) -
                   p * (1 + std::sqrt(1 + 4 * params.B1 * (1 - params.B1)));
        case CurvRow::pinch_quarter:
            return 1 + (nn - 1) * (1 + std::sqrt(1 - 4 * params.B)) / 2 -
                   p * (1 + std::sqrt(1 + 4 * params.B1));
        case CurvRow::const_pinch: return nn - 2 * p * (params.alpha / params.beta);
        case CurvRow::flat: return nn - 2 * p;
        case CurvRow::decay_pinch:
            return nn - (nn - 1) * params.B / (2 * params.eps) -
                   2 * p * std::exp(params.A / (2 * params.eps));
    }
    return 0;
}

/// 1-form energy with dF = p/2 (p-th power differential energy). This table
/// is published with its own k = 1 coefficients; tests compare it against
/// the master formula numerically and flag any row that disagrees.
inline double lambda_p_harmonic(CurvRow row, double p, int n, const LambdaQuery& params) {
    const double nn = n;
    switch (row) {
        case CurvRow::two_sided_power: return 1 + (nn - 1) * params.A1 - p * params.A;
        case CurvRow::two_sided_ratio:
            return 1 + (nn - 1) * (1 + std::sqrt(1 + 4 * params.A1)) / 2 -
                   p * (1 + std::sqrt(1 + 4 * params.A)) / 2;
        case CurvRow::pinch_positive:
            return 1 + (nn - 1) * (std::abs(params.B - 0.5) + 0.5) -
                   p * (1 + std::sqrt(1 + 4 * params.B1 * (1 - params.B1))) / 2;
        case CurvRow::pinch_quarter:
            return 1 + (nn - 1) * (1 + std::sqrt(1 - 4 * params.B)) / 2 -
                   p * (1 + std::sqrt(1 + 4 * params.B1)) / 2;
        case CurvRow::const_pinch: return nn - p * (params.alpha / params.beta);
        case CurvRow::flat: return nn - p;
        case CurvRow::decay_pinch:
            return nn - (nn - 1) * params.B / (2 * params.eps) -
                   p * std::exp(params.A / (2 * params.eps));
    }
    return 0;
}

/// 2-form energy with dF = 1 (the plus-sign square-root energy).
inline double lambda_born_infeld_plus(CurvRow row, int n, const LambdaQuery& params) {
    const double nn = n;
    switch (row) {
        case CurvRow::two_sided_power: return 1 + (nn - 1) * params.A1 - 4 * params.A;
        case CurvRow::two_sided_ratio:
            return 1 + (nn - 1) * (1 + std::sqrt(1 + 4 * params.A1)) / 2 -
                   2 * (1 + std::sqrt(1 + 4 * params.A));
        case CurvRow::pinch_positive:
            return 1 + (nn - 1) * (std::abs(params.B - 0.5) + 0.5) -
                   2 * (1 + std::sqrt(1 + 4 * params.B1 * (1 - params.B1)));
        case CurvRow::pinch_quarter:
            return 1 + (nn - 1) * (1 + std::sqrt(1 - 4 * params.B)) / 2 -
                   2 * (1 + std::sqrt(1 + 4 * params.B1));
        case CurvRow::const_pinch: return nn - 4 * (params.alpha / params.beta);
        case CurvRow::flat: return nn - 4;
        case CurvRow::decay_pinch:
            return nn - (nn - 1) * params.B / (2 * params.eps) -
                   4 * std::exp(params.A / (2 * params.eps));
    }
    return 0;
}

/// 1-form energy with general dF (the starlike boundary-value table).
inline double lambda_dirichlet(CurvRow row, double dF, int n, const LambdaQuery& params) {
    const double nn = n;
    switch (row) {
        case CurvRow::two_sided_power: return 1 + (nn - 1) * params.A1 - 2 * dF * params.A;
        case CurvRow::two_sided_ratio:
            return 1 + (nn - 1) * (1 + std::sqrt(1 + 4 * params.A1)) / 2 -
                   dF * (1 + std::sqrt(1 + 4 * params.A));
        case CurvRow::pinch_positive:
            return 1 + (nn - 1) * (std::abs(params.B - 0.5) + 0.5) -
                   dF * (1 + std::sqrt(1 + 4 * params.B1 * (1 - params.B1)));
        case CurvRow::pinch_quarter:
            return 1 + (nn - 1) * (1 + std::sqrt(1 - 4 * params.B)) / 2 -
                   dF * (1 + std::sqrt(1 + 4 * params.B1));
        case CurvRow::const_pinch: return nn - 2 * (params.alpha / params.beta) * dF;
        case CurvRow::flat: return nn - 2 * dF;
        case CurvRow::decay_pinch:
            return nn - (nn - 1) * params.B / (2 * params.eps) -
                   2 * std::exp(params.A / (2 * params.eps)) * dF;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Monotonicity and vanishing checkers
// ---------------------------------------------------------------------------

/// rho -> integral of F(|w|^2/2) over B_rho: nonnegative and nondecreasing,
/// sampled at construction.
struct BallEnergy {
    RadialExpr E;

    static BallEnergy from_expr(const RadialExpr& e, double lo, double hi, int samples = 64) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < samples; ++i) {
            const double r = lo + (hi - lo) * i / (samples - 1);
            const double v = e.eval(r);
            if (v < -1e-12) throw hypothesis_error("ball energy: negative value sampled");
            if (v < prev - 1e-9 * std::max(1.0, std::abs(prev)))
                throw hypothesis_error("ball energy: decreasing sample");
            prev = v;
        }
        return BallEnergy{e};
    }
};

struct MonotonicityReport {
    bool pass = true;
    double worst_rho1 = 0, worst_rho2 = 0;
    double worst_slack = std::numeric_limits<double>::infinity();
};

/// Assert rho -> E(rho)/rho^lambda nondecreasing across the grid, with
/// relative slack tolerance; reports the worst offending pair.
inline MonotonicityReport check_monotonicity(const BallEnergy& E, double lambda,
                                             const std::vector<double>& grid,
                                             double rel_tol = 1e-8) {
    MonotonicityReport rep;
    if (grid.size() < 2) throw domain_error("check_monotonicity: need >= 2 grid points");
    double prev_ratio = 0, prev_rho = 0;
    bool first = true;
    for (double rho : grid) {
        const double ratio = E.E.eval(rho) / std::pow(rho, lambda);
        if (!first) {
            const double slack = (ratio - prev_ratio) / std::max(1.0, std::abs(prev_ratio));
            if (slack < rep.worst_slack) {
                rep.worst_slack = slack;
                rep.worst_rho1 = prev_rho;
                rep.worst_rho2 = rho;
            }
            if (slack < -rel_tol) rep.pass = false;
        }
        prev_ratio = ratio;
        prev_rho = rho;
        first = false;
    }
    return rep;
}

struct DensityRatioReport {
    bool ratio_ok = true;      ///< rho * surface / ball >= lambda everywhere
    double worst_rho = 0;
    double worst_ratio = std::numeric_limits<double>::infinity();
    bool monotone_ok = true;   ///< the implied ball-energy monotonicity
    MonotonicityReport monotonicity;
};

/// For a radial energy density e on a model, check the surface-to-ball bound
///   rho e(rho) f(rho)^{n-1} / Int_0^rho e f^{n-1} >= lambda - tol
/// and, whenever it holds, that the implied monotonicity of
/// rho -> E(rho)/rho^lambda follows on the same grid.
inline DensityRatioReport check_density_ratio(const ModelManifold& M, const RadialExpr& density,
                                              double lambda, const std::vector<double>& grid,
                                              double tol = 1e-8,
                                              double integrand_hint = 0.0) {
    if (grid.size() < 2) throw domain_error("check_density_ratio: need >= 2 grid points");
    DensityRatioReport rep;
    auto integrand = [&](double r) {
        return density.eval(r) * std::pow(M.f(r), M.n - 1);
    };
    IntegrateOptions opts;
    opts.tol = 1e-11;
    if (integrand_hint < 0) opts.singularity_exponent = integrand_hint;
    // cumulative ball energies across the grid
    std::vector<double> ball(grid.size());
    double acc = integrate_fn(integrand, 0.0, grid.front(), opts, density.breakpoints());
    ball[0] = acc;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        IntegrateOptions seg;
        seg.tol = 1e-11;
        acc += integrate_fn(integrand, grid[i - 1], grid[i], seg, density.breakpoints());
        ball[i] = acc;
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double rho = grid[i];
        const double ratio = rho * integrand(rho) / ball[i];
        if (ratio < rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_rho = rho;
        }
        if (ratio < lambda - tol) rep.ratio_ok = false;
    }
    // implied monotonicity of E(rho)/rho^lambda on the same grid
    std::vector<double> rhos = grid;
    auto Ecurve = rx::grid(rhos, ball);
    rep.monotonicity = check_monotonicity(BallEnergy{Ecurve}, lambda, grid, 1e-8);
    rep.monotone_ok = rep.monotonicity.pass;
    return rep;
}

struct VanishingReport {
    bool is_little_o = false;  ///< E = o(rho^lambda) by the closed-form rule
    bool forces_zero = false;  ///< under the monotonicity formula, E must vanish
    bool contradiction = false; ///< profile claims little-o growth with c > 0
};

/// Little-o test on the power-log family: E = o(rho^lambda) iff the exponent
/// is below lambda, or equal with a negative log power. A positive-mass
/// profile in the little-o regime cannot satisfy the monotonicity formula
/// unless it is identically zero, which the report flags as a contradiction
/// certificate.
inline VanishingReport vanishing_test(const PowerLogProfile& E, double lambda) {
    VanishingReport rep;
    rep.is_little_o = (E.alpha < lambda) || (E.alpha == lambda && E.beta < 0);
    rep.forces_zero = rep.is_little_o;
    rep.contradiction = rep.is_little_o && E.c > 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Dirichlet applicability on starlike domains
// ---------------------------------------------------------------------------

struct RadialGraphDomain {
    enum class Kind { radial_graph, annulus, other } kind = Kind::radial_graph;
    /// radius of the boundary as a function of the unit direction
    std::function<double(const std::vector<double>&)> rho;
};

struct StarlikeReport {
    bool starlike = false;
    double min_inner_product = 0;
};

/// For a boundary given as a positive radial graph rho(theta), the outward
/// normal satisfies <d/dr, nu> = rho / sqrt(rho^2 + |grad_theta rho|^2) > 0,
/// so the sign condition always holds; the operation exists to reject
/// non-graph boundaries and to document the reduction.
inline StarlikeReport starlike_check(const RadialGraphDomain& dom,
                                     const std::vector<std::vector<double>>& directions) {
    if (dom.kind != RadialGraphDomain::Kind::radial_graph)
        throw unsupported_domain_error(
            "starlike_check: boundary is not a single radial graph over the pole");
    if (directions.empty()) throw domain_error("starlike_check: need sample directions");
    StarlikeReport rep;
    rep.min_inner_product = std::numeric_limits<double>::infinity();
    for (const auto& th : directions) {
        double norm2 = 0;
        for (double c : th) norm2 += c * c;
        if (!(norm2 > 0)) throw domain_error("starlike_check: zero direction");
        std::vector<double> u = th;
        const double nrm = std::sqrt(norm2);
        for (double& c : u) c /= nrm;
        const double r0 = dom.rho(u);
        if (!(r0 > 0) || !std::isfinite(r0))
            throw unsupported_domain_error("starlike_check: boundary radius must be positive");
        // tangential gradient by central differences along an orthonormal
        // basis of the tangent space at u
        double grad2 = 0;
        const double h = 1e-5;
        const std::size_t n = u.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            // Gram-Schmidt a coordinate vector against u
            std::vector<double> e(n, 0.0);
            e[i] = 1.0;
            double dot = u[i];
            for (std::size_t j = 0; j < n; ++j) e[j] -= dot * u[j];
            double en = 0;
            for (double c : e) en += c * c;
            if (en < 1e-12) {
                e.assign(n, 0.0);
                e[n - 1] = 1.0;
                dot = u[n - 1];
                for (std::size_t j = 0; j < n; ++j) e[j] -= dot * u[j];
                en = 0;
                for (double c : e) en += c * c;
            }
            en = std::sqrt(en);
            for (double& c : e) c /= en;
            std::vector<double> up(n), um(n);
            double npp = 0, nmm = 0;
            for (std::size_t j = 0; j < n; ++j) {
                up[j] = u[j] + h * e[j];
                um[j] = u[j] - h * e[j];
                npp += up[j] * up[j];
                nmm += um[j] * um[j];
            }
            npp = std::sqrt(npp);
            nmm = std::sqrt(nmm);
            for (std::size_t j = 0; j < n; ++j) {
                up[j] /= npp;
                um[j] /= nmm;
            }
            const double g = (dom.rho(up) - dom.rho(um)) / (2 * h);
            grad2 += g * g;
        }
        const double ip = r0 / std::sqrt(r0 * r0 + grad2);
        rep.min_inner_product = std::min(rep.min_inner_product, ip);
    }
    rep.starlike = rep.min_inner_product >= 0;
    return rep;
}

/// True iff the k = 1 row's side condition holds, the F-lower degree clears
/// 1/2, and the domain is starlike.
inline bool dirichlet_applicable(const LambdaQuery& cond, double lF, bool starlike) {
    if (cond.k != 1) throw hypothesis_error("dirichlet_applicable: restricted to k = 1");
    return lambda_applicable(cond) && lF >= 0.5 && starlike;
}

// ---------------------------------------------------------------------------
// Stress-energy pairing in the model frame (radial 1-form fields)
// ---------------------------------------------------------------------------

/// <S_{F,w}, grad(X flat)> at radius r for w = e(r) dr and X = r grad r:
/// (F - F' e^2) + (n-1) (r f'/f) F, everything evaluated at t = e^2/2.
inline double stress_energy_pairing(const ModelManifold& M, const FKind& F, double e_r,
                                    double r) {
    const double t = e_r * e_r / 2;
    const double rq = r * M.fprime(r) / M.f(r);
    return (F.F(t) - F.Fprime(t) * e_r * e_r) + (M.n - 1) * rq * F.F(t);
}

/// Lower bound (1 + (n-1) r h1 - 2 k dF r h2) F(e^2/2) with h1 = h2 = f'/f.
inline double stress_energy_lower_bound(const ModelManifold& M, const FKind& F, double e_r,
                                        double r, int k) {
    const double t = e_r * e_r / 2;
    const double rq = r * M.fprime(r) / M.f(r);
    if (rq < 1 - 1e-12)
        throw hypothesis_error("stress-energy bound: needs r h2(r) >= 1");
    return (1 + (M.n - 1) * rq - 2 * k * f_degree(F) * rq) * F.F(t);
}

} // namespace rcg
