#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "comparison.hpp"
#include "duality.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "growth.hpp"
#include "inequalities.hpp"
#include "model.hpp"
#include "ode.hpp"
#include "polyform.hpp"
#include "radial.hpp"

namespace rcg {

// ---------------------------------------------------------------------------
// Small spec parsers shared by the CLI flags and the scenario files
// ---------------------------------------------------------------------------

namespace spec {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double num(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw domain_error("bad number: '" + s + "'");
    return v;
}

/// "const:v", "power:c,e", "powerlog:c,a,b", "invsq:c", "sin:amp,freq",
/// "cos:amp,freq", "sinh:amp,freq", "cosh:amp,freq", "shifted-invsq:c,shift"
inline RadialExpr radial(const std::string& text) {
    const std::string s = trim(text);
    const auto colon = s.find(':');
    const std::string name = colon == std::string::npos ? s : s.substr(0, colon);
    std::vector<double> a;
    if (colon != std::string::npos)
        for (const auto& part : split(s.substr(colon + 1), ','))
            a.push_back(num(trim(part)));
    auto want = [&](std::size_t k) {
        if (a.size() != k)
            throw domain_error("radial spec '" + s + "': expected " + std::to_string(k) +
                               " arguments");
    };
    if (name == "const") {
        want(1);
        return rx::constant(a[0]);
    }
    if (name == "power") {
        want(2);
        return rx::power(a[0], a[1]);
    }
    if (name == "powerlog") {
        want(3);
        return rx::power_log(a[0], a[1], a[2]);
    }
    if (name == "invsq") {
        want(1);
        return rx::power(a[0], -2.0);
    }
    if (name == "shifted-invsq") {
        want(2);
        return rx::shift(rx::power(a[0], -2.0), a[1]);
    }
    if (name == "sin") {
        want(2);
        return rx::sin(a[0], a[1]);
    }
    if (name == "cos") {
        want(2);
        return rx::cos(a[0], a[1]);
    }
    if (name == "sinh") {
        want(2);
        return rx::sinh(a[0], a[1]);
    }
    if (name == "cosh") {
        want(2);
        return rx::cosh(a[0], a[1]);
    }
    throw domain_error("unknown radial spec '" + s + "'");
}

/// "euclidean", "hyperbolic", "sphere", "power:A", "sinh:k", "sin:k"
inline ModelManifold model(const std::string& text, int n, double T) {
    const std::string s = trim(text);
    if (s == "euclidean") return make_model(n, rx::power(1.0, 1.0), T);
    if (s == "hyperbolic") return make_model(n, rx::sinh(1.0, 1.0), T);
    if (s == "sphere") return make_model(n, rx::sin(1.0, 1.0), std::min(T, M_PI * 0.999));
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
        const std::string name = s.substr(0, colon);
        const double v = num(s.substr(colon + 1));
        if (name == "power") return make_model(n, rx::power(1.0, v), T, v != 1.0);
        if (name == "sinh") return make_model(n, rx::sinh(1.0 / v, v), T);
        if (name == "sin") return make_model(n, rx::sin(1.0 / v, v), std::min(T, M_PI / v * 0.999));
    }
    throw domain_error("unknown model spec '" + s + "'");
}

/// "identity", "ppower:p", "bi-plus", "bi-minus"
inline FKind energy(const std::string& text) {
    const std::string s = trim(text);
    if (s == "identity") return f_identity();
    if (s == "bi-plus") return f_born_infeld_plus();
    if (s == "bi-minus") return f_born_infeld_minus();
    const auto colon = s.find(':');
    if (colon != std::string::npos && s.substr(0, colon) == "ppower")
        return f_p_power(num(s.substr(colon + 1)));
    throw domain_error("unknown energy spec '" + s + "'");
}

/// Roman row labels i..vii or descriptive names.
inline CurvRow row(const std::string& text) {
    const std::string s = trim(text);
    if (s == "i" || s == "two-sided-power") return CurvRow::two_sided_power;
    if (s == "ii" || s == "two-sided-ratio") return CurvRow::two_sided_ratio;
    if (s == "iii" || s == "pinch-positive") return CurvRow::pinch_positive;
    if (s == "iv" || s == "pinch-quarter") return CurvRow::pinch_quarter;
    if (s == "v" || s == "const-pinch") return CurvRow::const_pinch;
    if (s == "vi" || s == "flat") return CurvRow::flat;
    if (s == "vii" || s == "decay-pinch") return CurvRow::decay_pinch;
    throw domain_error("unknown curvature row '" + s + "'");
}

inline CurvatureHypothesis::Kind hypothesis_kind(const std::string& text) {
    using K = CurvatureHypothesis::Kind;
    static const std::map<std::string, K> table = {
        {"ric-lower-power", K::ric_lower_power},
        {"ric-lower-positive", K::ric_lower_positive},
        {"sec-lower-power", K::sec_lower_power},
        {"sec-upper-power", K::sec_upper_power},
        {"two-sided-power", K::two_sided_power},
        {"two-sided-ratio", K::two_sided_ratio},
        {"sec-lower-positive", K::sec_lower_positive},
        {"sec-lower-quarter", K::sec_lower_quarter},
        {"sec-upper-positive", K::sec_upper_positive},
        {"sec-upper-quarter", K::sec_upper_quarter},
        {"pinch-quarter", K::pinch_quarter},
        {"pinch-positive", K::pinch_positive},
        {"equality-power", K::equality_power},
        {"flat", K::flat},
        {"mixed-sign", K::mixed_sign},
        {"const-pinch", K::const_pinch},
        {"decay-pinch", K::decay_pinch},
    };
    auto it = table.find(trim(text));
    if (it == table.end()) throw domain_error("unknown hypothesis '" + text + "'");
    return it->second;
}

inline CknCase ckn_case(const std::string& text) {
    static const std::map<std::string, CknCase> table = {
        {"flat-nonneg", CknCase::flat_nonneg},
        {"flat-nonpos", CknCase::flat_nonpos},
        {"flat-zero", CknCase::flat_zero},
        {"ric-lower-power", CknCase::ric_lower_power},
        {"ric-lower-positive", CknCase::ric_lower_positive},
        {"ric-nonneg", CknCase::ric_nonneg},
        {"k-lower-power", CknCase::k_lower_power},
        {"k-upper-power", CknCase::k_upper_power},
        {"k-equal-power", CknCase::k_equal_power},
        {"k-equal-ratio", CknCase::k_equal_ratio},
        {"k-lower-positive", CknCase::k_lower_positive},
        {"k-upper-positive", CknCase::k_upper_positive},
    };
    auto it = table.find(trim(text));
    if (it == table.end()) throw domain_error("unknown constant-table case '" + text + "'");
    return it->second;
}

inline CostaCase costa_case(const std::string& text) {
    const std::string s = trim(text);
    if (s == "i") return CostaCase::i;
    if (s == "ii") return CostaCase::ii;
    if (s == "iii") return CostaCase::iii;
    if (s == "iv") return CostaCase::iv;
    if (s == "v") return CostaCase::v;
    if (s == "vi") return CostaCase::vi;
    if (s == "vii") return CostaCase::vii;
    throw domain_error("unknown derived-inequality case '" + s + "'");
}

/// "bump:r1,r2" or "rise:r1,w,R,m"
inline std::pair<RadialExpr, std::pair<double, double>> test_function(const std::string& text) {
    const std::string s = trim(text);
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw domain_error("test function spec needs arguments");
    const std::string name = s.substr(0, colon);
    std::vector<double> a;
    for (const auto& part : split(s.substr(colon + 1), ',')) a.push_back(num(trim(part)));
    if (name == "bump" && a.size() == 2)
        return {bumps::cubic_bump(a[0], a[1]), {a[0], a[1]}};
    if (name == "rise" && a.size() == 4)
        return {bumps::rise_tail_bump(a[0], a[1], a[2], static_cast<int>(a[3])), {a[0], a[2]}};
    throw domain_error("unknown test function spec '" + s + "'");
}

/// Rational point list "1/2,0,1;0,0,1"
inline std::vector<std::vector<Rat>> rational_points(const std::string& text, int n) {
    std::vector<std::vector<Rat>> pts;
    for (const auto& chunk : split(text, ';')) {
        std::vector<Rat> p;
        for (const auto& comp : split(chunk, ',')) {
            const std::string c = trim(comp);
            const auto slash = c.find('/');
            if (slash == std::string::npos) {
                p.emplace_back(c);
            } else {
                p.push_back(Rat(c.substr(0, slash)) / Rat(c.substr(slash + 1)));
            }
        }
        if (static_cast<int>(p.size()) != n)
            throw domain_error("point dimension mismatch in '" + chunk + "'");
        pts.push_back(std::move(p));
    }
    return pts;
}

} // namespace spec

// ---------------------------------------------------------------------------
// Scenario files: flat key = value lines under [kind id] headers
// ---------------------------------------------------------------------------

struct ScenarioSection {
    std::string kind, id;
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        return std::nullopt;
    }
    std::string need(const std::string& key) const {
        auto v = get(key);
        if (!v) throw domain_error("scenario [" + kind + " " + id + "] missing key '" + key + "'");
        return *v;
    }
    double num(const std::string& key) const { return spec::num(need(key)); }
    double num_or(const std::string& key, double dflt) const {
        auto v = get(key);
        return v ? spec::num(*v) : dflt;
    }
    std::vector<std::string> all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }
};

inline std::vector<ScenarioSection> parse_scenario_file(const std::string& text) {
    std::vector<ScenarioSection> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = spec::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw domain_error("scenario line " + std::to_string(lineno) + ": bad header");
            const std::string inner = spec::trim(line.substr(1, line.size() - 2));
            const auto space = inner.find(' ');
            if (space == std::string::npos)
                throw domain_error("scenario line " + std::to_string(lineno) +
                                   ": header needs '[kind id]'");
            ScenarioSection s;
            s.kind = spec::trim(inner.substr(0, space));
            s.id = spec::trim(inner.substr(space + 1));
            out.push_back(std::move(s));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || out.empty())
            throw domain_error("scenario line " + std::to_string(lineno) + ": expected key = value");
        out.back().entries.emplace_back(spec::trim(line.substr(0, eq)),
                                        spec::trim(line.substr(eq + 1)));
    }
    return out;
}

struct RunResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

namespace detail_run {

inline SolverOptions solver_opts(const ScenarioSection& s) {
    SolverOptions o;
    o.epsilon = s.num_or("eps", -1.0);
    if (s.get("singular") && s.need("singular") == "1")
        o.seed = SolverOptions::SeedHint::singular;
    return o;
}

inline std::string flag(bool b) { return b ? "yes" : "no"; }

inline RunResult run_solve(const ScenarioSection& s) {
    const RadialExpr G = spec::radial(s.need("G"));
    const double kappa = s.num("kappa");
    const double T = s.num("T");
    const auto opts = solver_opts(s);
    RunResult r{s.id, false, ""};
    if (s.need("type") == "jacobi") {
        auto sol = solve_jacobi(G, kappa, T, opts);
        const double res = jacobi_max_residual(sol);
        r.pass = res <= 1e-6;
        r.detail = "residual=" + detail::fmt17(res) + " t_sup=" + detail::fmt17(sol.t_sup);
    } else {
        auto sol = solve_riccati(G, kappa, T, opts);
        const double res = riccati_max_residual(sol);
        r.pass = res <= 1e-6;
        r.detail = "residual=" + detail::fmt17(res) +
                   (sol.pole ? " pole=" + detail::fmt17(*sol.pole) : "");
    }
    return r;
}

inline RunResult run_dual(const ScenarioSection& s) {
    const RadialExpr G = spec::radial(s.need("G"));
    const double kappa = s.num("kappa");
    const double T = s.num("T");
    const double tol = s.num_or("tol", 1e-6);
    const auto opts = solver_opts(s);
    auto f = solve_jacobi(G, kappa, T, opts);
    auto g = transform(f);
    auto back = reverse(g);
    const double lo = 2 * f.epsilon, hi = 0.9 * f.t_sup;
    double gap = 0;
    for (int i = 0; i <= 400; ++i) {
        const double t = lo + (hi - lo) * i / 400.0;
        gap = std::max(gap, std::abs(back.f(t) - f.f(t)) / std::max(1.0, std::abs(f.f(t))));
    }
    RunResult r{s.id, gap <= tol, "round_trip_gap=" + detail::fmt17(gap)};
    return r;
}

inline RunResult run_compare(const ScenarioSection& s) {
    const RadialExpr G1 = spec::radial(s.need("G1"));
    const RadialExpr G2 = spec::radial(s.need("G2"));
    const double k1 = s.num("kappa1"), k2 = s.num("kappa2");
    const double T = s.num("T");
    SolverOptions o1 = solver_opts(s), o2 = solver_opts(s);
    const std::string theorem = s.need("theorem");
    ComparisonCertificate cert;
    if (theorem == "jacobi-pair") {
        cert = check_sturm(solve_jacobi(G1, k1, T, o1), solve_jacobi(G2, k2, T, o2));
    } else if (theorem == "riccati-pair") {
        cert = check_riccati_pair(solve_riccati(G1, k1, T, o1), solve_riccati(G2, k2, T, o2));
    } else if (theorem == "riccati-vs-jacobi") {
        cert = check_mixed_I(solve_riccati(G1, k1, T, o1), solve_jacobi(G2, k2, T, o2));
    } else if (theorem == "jacobi-vs-riccati") {
        cert = check_mixed_II(solve_jacobi(G1, k1, T, o1), solve_riccati(G2, k2, T, o2));
    } else {
        throw domain_error("unknown theorem '" + theorem + "'");
    }
    return {s.id, cert.pass, cert.to_record()};
}

inline CurvatureHypothesis hyp_from(const ScenarioSection& s) {
    CurvatureHypothesis h;
    h.kind = spec::hypothesis_kind(s.need("hyp"));
    h.A = s.num_or("A", 1);
    h.A1 = s.num_or("A1", 1);
    h.B = s.num_or("B", 0);
    h.B1 = s.num_or("B1", 0);
    h.alpha = s.num_or("alpha", 1);
    h.beta = s.num_or("beta", 1);
    h.eps = s.num_or("eps-decay", 1);
    h.shift = s.num_or("c", 0);
    return h;
}

inline RunResult run_bounds(const ScenarioSection& s) {
    const int n = static_cast<int>(s.num("n"));
    const CurvatureHypothesis h = hyp_from(s);
    const auto bp = bound_catalog(h, n);
    RunResult r{s.id, true, ""};
    if (auto m = s.get("model")) {
        const double T = s.num_or("T", s.num_or("rmax", 5.0));
        auto model = spec::model(*m, n, T);
        auto cert = verify_bounds(model, h);
        r.pass = cert.pass;
        r.detail = cert.to_record();
    } else {
        const double rmax = s.num_or("rmax", 5.0);
        const int count = static_cast<int>(s.num_or("count", 16));
        std::ostringstream os;
        write_bound_table_csv(os, bp, nullptr, rmax / count, rmax, count);
        const auto text = os.str();
        r.detail = "rows=" + std::to_string(count) +
                   " bytes=" + std::to_string(text.size());
    }
    return r;
}

inline RunResult run_growth(const ScenarioSection& s) {
    const double p = s.num("p");
    RunResult r{s.id, true, ""};
    std::string detail;
    for (const auto& text : s.all("profile")) {
        const auto parts = spec::split(text, ',');
        if (parts.size() != 3) throw domain_error("profile needs c,alpha,beta");
        GrowthProfile g;
        g.p = p;
        g.B = {spec::num(spec::trim(parts[0])), spec::num(spec::trim(parts[1])),
               spec::num(spec::trim(parts[2]))};
        const auto v = classify(g);
        if (!detail.empty()) detail += " | ";
        detail += text + " -> finite=" + flag(v.finite) + " mild=" + flag(v.mild) +
                  " obtuse=" + flag(v.obtuse) + " moderate=" + flag(v.moderate) +
                  " small=" + flag(v.small) + " balanced=" + flag(v.balanced);
    }
    r.detail = detail;
    return r;
}

inline RunResult run_forms(const ScenarioSection& s) {
    int n = static_cast<int>(s.num_or("n", 0));
    const std::string expr = s.need("expr");
    if (n == 0) {
        // infer the variable count from the largest index mentioned
        for (std::size_t i = 0; i + 1 < expr.size(); ++i)
            if (expr[i] == 'x' && std::isdigit(static_cast<unsigned char>(expr[i + 1]))) {
                int v = 0;
                std::size_t j = i + 1;
                while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j])))
                    v = v * 10 + (expr[j++] - '0');
                n = std::max(n, v);
            }
        if (n == 0) n = 2;
    }
    const PolyForm w = parse_form(expr, n);
    const FormClass c = classify(w);
    RunResult r{s.id, true,
                "closed=" + flag(c.closed) + " coclosed=" + flag(c.coclosed) +
                    " harmonic=" + flag(c.harmonic)};
    if (auto pts = s.get("points")) {
        const auto rep = condition_w_report(w, spec::rational_points(*pts, n));
        r.detail += " condition_w=" + flag(rep.holds_at_all_samples);
        r.pass = rep.holds_at_all_samples;
    }
    return r;
}

inline RunResult run_ckn(const ScenarioSection& s) {
    const int n = static_cast<int>(s.num("n"));
    CknParams p;
    p.A = s.num_or("A", 1);
    p.A1 = s.num_or("A1", 1);
    p.B = s.num_or("B", 0);
    p.B1 = s.num_or("B1", 0);
    p.c = s.num_or("c", 0);
    const CknCase cs = spec::ckn_case(s.need("case"));
    const double a = s.num("a"), b = s.num("b");
    const double C = ckn_constant(cs, a, b, n, p);
    RunResult r{s.id, true, "C=" + detail::fmt17(C)};
    if (auto uspec = s.get("u")) {
        const double T = s.num_or("T", 5.0);
        CknScenario sc;
        sc.M = spec::model(s.need("model"), n, T);
        sc.a = a;
        sc.b = b;
        auto [u, support] = spec::test_function(*uspec);
        sc.u = u;
        sc.u_prime = u.derivative();
        sc.r1 = support.first;
        sc.r2 = support.second;
        sc.hyp = cs;
        sc.params = p;
        const auto rep = verify_ckn(sc, C);
        r.pass = rep.pass;
        r.detail += " slack=" + detail::fmt17(rep.slack);
    }
    return r;
}

inline RunResult run_hardy(const ScenarioSection& s) {
    const int n = static_cast<int>(s.num("n"));
    const double p = s.num("p"), A = s.num_or("A", 1);
    const double C = hardy_constant(p, n, A);
    RunResult r{s.id, true, "C=" + detail::fmt17(C)};
    if (auto m = s.get("model")) {
        const double rho2 = s.num_or("r2", 2.0);
        HardyScenario sc;
        sc.M = spec::model(*m, n, s.num_or("T", rho2 * 2));
        sc.p = p;
        sc.A = A;
        sc.s = s.num_or("s", 1.0);
        sc.rho1 = s.num_or("r1", rho2 / 2);
        sc.rho2 = rho2;
        const auto rep = verify_hardy(sc);
        r.pass = rep.pass;
        r.detail += " slack=" + detail::fmt17(rep.slack);
    }
    return r;
}

inline RunResult run_costa(const ScenarioSection& s) {
    const int n = static_cast<int>(s.num("n"));
    CknParams p;
    p.A = s.num_or("A", 1);
    p.A1 = s.num_or("A1", 1);
    p.B = s.num_or("B", 0);
    p.B1 = s.num_or("B1", 0);
    const double C = costa_constant(spec::costa_case(s.need("case")),
                                    spec::ckn_case(s.need("row")), n, s.num_or("param", 0), p);
    return {s.id, true, "C=" + detail::fmt17(C)};
}

inline RunResult run_mono(const ScenarioSection& s) {
    LambdaQuery q;
    q.row = spec::row(s.need("row"));
    q.k = static_cast<int>(s.num("k"));
    q.n = static_cast<int>(s.num("n"));
    q.dF = s.get("F") ? f_degree(spec::energy(s.need("F"))) : s.num("dF");
    q.A = s.num_or("A", 0);
    q.A1 = s.num_or("A1", 0);
    q.B = s.num_or("B", 0);
    q.B1 = s.num_or("B1", 0);
    q.alpha = s.num_or("alpha", 1);
    q.beta = s.num_or("beta", 1);
    q.eps = s.num_or("eps-decay", 1);
    const double lambda = lambda_exponent(q);
    RunResult r{s.id, true, "lambda=" + detail::fmt17(lambda)};
    if (auto eprof = s.get("E")) {
        const auto parts = spec::split(*eprof, ',');
        if (parts.size() != 3) throw domain_error("E profile needs c,alpha,beta");
        PowerLogProfile E{spec::num(spec::trim(parts[0])), spec::num(spec::trim(parts[1])),
                          spec::num(spec::trim(parts[2]))};
        const auto v = vanishing_test(E, lambda);
        r.detail += " vanishing=" + flag(v.is_little_o);
    }
    return r;
}

} // namespace detail_run

inline RunResult run_scenario(const ScenarioSection& s) {
    try {
        if (s.kind == "solve") return detail_run::run_solve(s);
        if (s.kind == "dual") return detail_run::run_dual(s);
        if (s.kind == "compare") return detail_run::run_compare(s);
        if (s.kind == "bounds") return detail_run::run_bounds(s);
        if (s.kind == "growth") return detail_run::run_growth(s);
        if (s.kind == "forms") return detail_run::run_forms(s);
        if (s.kind == "ckn") return detail_run::run_ckn(s);
        if (s.kind == "hardy") return detail_run::run_hardy(s);
        if (s.kind == "costa") return detail_run::run_costa(s);
        if (s.kind == "mono") return detail_run::run_mono(s);
        return {s.id, false, "unknown scenario kind '" + s.kind + "'"};
    } catch (const std::exception& e) {
        return {s.id, false, std::string("error: ") + e.what()};
    }
}

/// Run every scenario, print one line per scenario ordered by id, then a
/// summary. Returns 0 when all pass, 1 otherwise.
inline int run_report(const std::string& file_text, std::ostream& os) {
    auto sections = parse_scenario_file(file_text);
    std::vector<RunResult> results;
    results.reserve(sections.size());
    for (const auto& s : sections) results.push_back(run_scenario(s));
    std::stable_sort(results.begin(), results.end(),
                     [](const RunResult& a, const RunResult& b) { return a.id < b.id; });
    int failures = 0;
    for (const auto& r : results) {
        os << r.id << ": " << (r.pass ? "PASS" : "FAIL") << ' ' << r.detail << '\n';
        if (!r.pass) ++failures;
    }
    os << "summary: " << (results.size() - failures) << "/" << results.size() << " passed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace rcg
