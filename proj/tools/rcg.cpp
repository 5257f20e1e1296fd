// Command-line front end: scenario-driven verification reports and CSV plot
// data for the radial comparison-geometry toolkit.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcg/scenario.hpp"

namespace {

using namespace rcg;

std::string g17(double v) { return detail::fmt17(v); }

// RFC 4180: quote fields containing separators or quotes, double the quotes.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

struct GlobalFlags {
    unsigned long long seed = 0;
    double tol = 1e-6;
    int grid = 512;
    std::string out;
};

int cmd_solve(const std::string& type, const std::string& gspec, double kappa, double T,
              double eps, bool singular, const GlobalFlags& gf) {
    SolverOptions opts;
    opts.epsilon = eps;
    if (singular) opts.seed = SolverOptions::SeedHint::singular;
    std::ofstream file;
    std::ostream& os = open_sink(file, gf.out);
    const RadialExpr G = spec::radial(gspec);
    if (type == "jacobi") {
        auto sol = solve_jacobi(G, kappa, T, opts);
        os << "t,f,fprime\n";
        for (std::size_t i = 0; i < sol.grid.size(); ++i)
            os << g17(sol.grid[i]) << ',' << g17(sol.f_values[i]) << ','
               << g17(sol.fprime_values[i]) << '\n';
        std::cerr << "t_sup=" << g17(sol.t_sup)
                  << " max_residual=" << g17(jacobi_max_residual(sol)) << '\n';
        return jacobi_max_residual(sol) <= gf.tol ? 0 : 1;
    }
    auto sol = solve_riccati(G, kappa, T, opts);
    os << "t,g\n";
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        os << g17(sol.grid[i]) << ',' << g17(sol.g_values[i]) << '\n';
    std::cerr << (sol.pole ? "pole=" + g17(*sol.pole) + " " : std::string{})
              << "max_residual=" << g17(riccati_max_residual(sol)) << '\n';
    return riccati_max_residual(sol) <= gf.tol ? 0 : 1;
}

int cmd_dual(const std::string& gspec, double kappa, double T, bool singular,
             const GlobalFlags& gf) {
    SolverOptions opts;
    if (singular) opts.seed = SolverOptions::SeedHint::singular;
    auto f = solve_jacobi(spec::radial(gspec), kappa, T, opts);
    auto g = transform(f);
    auto back = reverse(g);
    double gap = 0;
    const double lo = 2 * f.epsilon, hi = 0.9 * f.t_sup;
    for (int i = 0; i <= 1000; ++i) {
        const double t = lo + (hi - lo) * i / 1000.0;
        gap = std::max(gap, std::abs(back.f(t) - f.f(t)) / std::max(1.0, std::abs(f.f(t))));
    }
    std::cout << "round_trip_gap=" << g17(gap) << '\n';
    return gap <= gf.tol ? 0 : 1;
}

int cmd_compare(const std::string& theorem, const std::string& g1, const std::string& g2,
                double k1, double k2, double T, bool singular, const GlobalFlags& gf) {
    ScenarioSection s;
    s.kind = "compare";
    s.id = "cli";
    s.entries = {{"theorem", theorem}, {"G1", g1},       {"G2", g2},
                 {"kappa1", g17(k1)},  {"kappa2", g17(k2)}, {"T", g17(T)}};
    if (singular) s.entries.emplace_back("singular", "1");
    auto r = run_scenario(s);
    std::cout << r.detail << '\n';
    if (!gf.out.empty()) {
        // re-run to capture the per-node margins
        SolverOptions o;
        if (singular) o.seed = SolverOptions::SeedHint::singular;
        ComparisonCertificate cert;
        const RadialExpr G1 = spec::radial(g1), G2 = spec::radial(g2);
        if (theorem == "jacobi-pair")
            cert = check_sturm(solve_jacobi(G1, k1, T, o), solve_jacobi(G2, k2, T, o));
        else if (theorem == "riccati-pair")
            cert = check_riccati_pair(solve_riccati(G1, k1, T, o), solve_riccati(G2, k2, T, o));
        else if (theorem == "riccati-vs-jacobi")
            cert = check_mixed_I(solve_riccati(G1, k1, T, o), solve_jacobi(G2, k2, T, o));
        else
            cert = check_mixed_II(solve_jacobi(G1, k1, T, o), solve_riccati(G2, k2, T, o));
        std::ofstream file;
        std::ostream& os = open_sink(file, gf.out);
        cert.write_margins_csv(os);
    }
    return r.pass ? 0 : 1;
}

int cmd_bounds(const ScenarioSection& s, const GlobalFlags& gf) {
    const int n = static_cast<int>(s.num("n"));
    const CurvatureHypothesis h = detail_run::hyp_from(s);
    std::ofstream file;
    std::ostream& os = open_sink(file, gf.out);
    const double rmax = s.num_or("rmax", 5.0);
    const int count = static_cast<int>(s.num_or("count", gf.grid));
    int rc = 0;
    if (auto m = s.get("model")) {
        auto model = spec::model(*m, n, s.num_or("T", rmax));
        auto cert = verify_bounds(model, h);
        write_bound_table_csv(os, bound_catalog(h, n), &model, rmax / count, rmax, count);
        std::cerr << cert.to_record() << '\n';
        rc = cert.pass ? 0 : 1;
    } else {
        write_bound_table_csv(os, bound_catalog(h, n), nullptr, rmax / count, rmax, count);
    }
    return rc;
}

int cmd_growth(double p, const std::vector<std::string>& profiles, const GlobalFlags& gf) {
    std::ofstream file;
    std::ostream& os = open_sink(file, gf.out);
    os << "profile,finite,infinite,mild,severe,obtuse,acute,moderate,immoderate,small,large\n";
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    int rc = 0;
    for (const auto& text : profiles) {
        const auto parts = spec::split(text, ',');
        if (parts.size() != 3) throw domain_error("profile needs c,alpha,beta");
        GrowthProfile g;
        g.p = p;
        g.B = {spec::num(spec::trim(parts[0])), spec::num(spec::trim(parts[1])),
               spec::num(spec::trim(parts[2]))};
        const auto v = classify(g);
        os << csv_field(text) << ',' << yn(v.finite) << ',' << yn(v.infinite()) << ','
           << yn(v.mild) << ',' << yn(v.severe()) << ',' << yn(v.obtuse) << ','
           << yn(v.acute()) << ',' << yn(v.moderate) << ',' << yn(v.immoderate()) << ','
           << yn(v.small) << ',' << yn(v.large()) << '\n';
    }
    return rc;
}

int cmd_forms(const std::vector<std::string>& exprs, int n, const std::string& points) {
    int rc = 0;
    for (const auto& expr : exprs) {
        ScenarioSection s;
        s.kind = "forms";
        s.id = "cli";
        s.entries = {{"expr", expr}};
        if (n > 0) s.entries.emplace_back("n", std::to_string(n));
        if (!points.empty()) s.entries.emplace_back("points", points);
        auto r = run_scenario(s);
        std::cout << r.detail << '\n';
        if (!r.pass) rc = 1;
    }
    return rc;
}

int run_section_command(const ScenarioSection& s) {
    auto r = run_scenario(s);
    std::cout << r.detail << '\n';
    return r.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial comparison-geometry verification toolkit"};
    app.require_subcommand(1);

    GlobalFlags gf;
    app.add_option("--seed", gf.seed, "seed for randomized suites");
    app.add_option("--tol", gf.tol, "pass/fail tolerance");
    app.add_option("--grid", gf.grid, "default grid density");
    app.add_option("--out", gf.out, "write CSV output to this file instead of stdout");

    // solve
    auto* solve = app.add_subcommand("solve", "solve a Jacobi or Riccati system, dump grid CSV");
    std::string type = "jacobi", gspec = "const:0";
    double kappa = 1, T = 5, eps = -1;
    bool singular = false;
    solve->add_option("--type", type)->check(CLI::IsMember({"jacobi", "riccati"}));
    solve->add_option("--G", gspec, "coefficient spec, e.g. const:-1 or invsq:-2");
    solve->add_option("--kappa", kappa);
    solve->add_option("--T", T);
    solve->add_option("--eps", eps);
    solve->add_flag("--singular", singular, "use the linear seed for singular coefficients");

    // dual
    auto* dual = app.add_subcommand("dual", "transform/reverse round trip");
    std::string dG = "const:-1";
    double dkappa = 1, dT = 5;
    bool dsing = false;
    dual->add_option("--G", dG);
    dual->add_option("--kappa", dkappa);
    dual->add_option("--T", dT);
    dual->add_flag("--singular", dsing);

    // compare
    auto* cmp = app.add_subcommand("compare", "run a comparison checker, print the certificate");
    std::string theorem = "jacobi-pair", cg1 = "const:0", cg2 = "const:-1";
    double ck1 = 1, ck2 = 1, cT = 3;
    bool csing = false;
    cmp->add_option("--theorem", theorem)
        ->check(CLI::IsMember({"jacobi-pair", "riccati-pair", "riccati-vs-jacobi",
                               "jacobi-vs-riccati"}));
    cmp->add_option("--G1", cg1);
    cmp->add_option("--G2", cg2);
    cmp->add_option("--kappa1", ck1);
    cmp->add_option("--kappa2", ck2);
    cmp->add_option("--T", cT);
    cmp->add_flag("--singular", csing);

    // bounds
    auto* bounds = app.add_subcommand("bounds", "curvature hypothesis -> bound table CSV");
    std::string hyp = "flat", bmodel;
    double bA = 1, bA1 = 1, bB = 0, bB1 = 0, balpha = 1, bbeta = 1, beps = 1, bc = 0;
    double rmax = 5;
    int bn = 3, bcount = 0;
    bounds->add_option("--hyp", hyp);
    bounds->add_option("--A", bA);
    bounds->add_option("--A1", bA1);
    bounds->add_option("--B", bB);
    bounds->add_option("--B1", bB1);
    bounds->add_option("--alpha", balpha);
    bounds->add_option("--beta", bbeta);
    bounds->add_option("--eps-decay", beps);
    bounds->add_option("--c", bc);
    bounds->add_option("--n", bn);
    bounds->add_option("--rmax", rmax);
    bounds->add_option("--count", bcount);
    bounds->add_option("--model", bmodel, "also verify the bounds on this model");

    // growth
    auto* growth = app.add_subcommand("growth", "classify power-log ball-mass profiles");
    double gp = 2;
    std::vector<std::string> profiles;
    growth->add_option("--p", gp);
    growth->add_option("profiles", profiles, "profiles as c,alpha,beta")->required();

    // forms
    auto* forms = app.add_subcommand("forms", "classify polynomial differential forms");
    std::vector<std::string> exprs;
    int fn = 0;
    std::string fpoints;
    forms->add_option("exprs", exprs, "form expressions, e.g. \"x1 dx1\"")->required();
    forms->add_option("--n", fn, "ambient dimension (default: inferred)");
    forms->add_option("--points", fpoints, "rational sample points for the pointwise check");

    // ckn / hardy / costa / mono: thin wrappers over the scenario runners
    auto* ckn = app.add_subcommand("ckn", "interpolation-inequality constants and verification");
    std::string ckn_case_s = "flat-zero", ckn_model, ckn_u;
    double ca = 0, cb = 0, cA = 1, cA1 = 1, cB = 0, cB1 = 0, cc = 0, cknT = 5;
    int cn = 3;
    ckn->add_option("--case", ckn_case_s);
    ckn->add_option("--a", ca);
    ckn->add_option("--b", cb);
    ckn->add_option("--n", cn);
    ckn->add_option("--A", cA);
    ckn->add_option("--A1", cA1);
    ckn->add_option("--B", cB);
    ckn->add_option("--B1", cB1);
    ckn->add_option("--c", cc);
    ckn->add_option("--model", ckn_model);
    ckn->add_option("--u", ckn_u, "test function, e.g. bump:1,2");
    ckn->add_option("--T", cknT);

    auto* hardy = app.add_subcommand("hardy", "sharp Hardy-type constant and verification");
    double hp = 4, hA = 1, hs = 1, hr1 = 0, hr2 = 2;
    int hn = 3;
    std::string hmodel;
    hardy->add_option("--p", hp);
    hardy->add_option("--n", hn);
    hardy->add_option("--A", hA);
    hardy->add_option("--s", hs);
    hardy->add_option("--r1", hr1);
    hardy->add_option("--r2", hr2);
    hardy->add_option("--model", hmodel);

    auto* costa = app.add_subcommand("costa", "the seven derived integral-inequality constants");
    std::string costa_case_s = "vii", costa_row = "ric-nonneg";
    double costa_param = 0, coA = 1, coA1 = 1, coB = 0, coB1 = 0;
    int con = 3;
    costa->add_option("--case", costa_case_s);
    costa->add_option("--row", costa_row);
    costa->add_option("--n", con);
    costa->add_option("--param", costa_param, "free parameter (a or b) for cases i-iii");
    costa->add_option("--A", coA);
    costa->add_option("--A1", coA1);
    costa->add_option("--B", coB);
    costa->add_option("--B1", coB1);

    auto* mono = app.add_subcommand("mono", "monotonicity exponent and vanishing checks");
    std::string mrow = "flat", mF = "identity", mE;
    int mk = 1, mn = 3;
    double mA = 0, mA1 = 0, mB = 0, mB1 = 0, malpha = 1, mbeta = 1, meps = 1, mdF = -1;
    mono->add_option("--row", mrow);
    mono->add_option("--k", mk);
    mono->add_option("--n", mn);
    mono->add_option("--F", mF);
    mono->add_option("--dF", mdF, "override the F-degree directly");
    mono->add_option("--A", mA);
    mono->add_option("--A1", mA1);
    mono->add_option("--B", mB);
    mono->add_option("--B1", mB1);
    mono->add_option("--alpha", malpha);
    mono->add_option("--beta", mbeta);
    mono->add_option("--eps-decay", meps);
    mono->add_option("--E", mE, "ball-energy profile c,alpha,beta for the vanishing test");

    auto* report = app.add_subcommand("report", "run a scenario file end-to-end");
    std::string scenario_path;
    report->add_option("file", scenario_path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*solve) return cmd_solve(type, gspec, kappa, T, eps, singular, gf);
        if (*dual) return cmd_dual(dG, dkappa, dT, dsing, gf);
        if (*cmp) return cmd_compare(theorem, cg1, cg2, ck1, ck2, cT, csing, gf);
        if (*bounds) {
            ScenarioSection s;
            s.kind = "bounds";
            s.id = "cli";
            s.entries = {{"hyp", hyp},         {"A", g17(bA)},     {"A1", g17(bA1)},
                         {"B", g17(bB)},       {"B1", g17(bB1)},   {"alpha", g17(balpha)},
                         {"beta", g17(bbeta)}, {"eps-decay", g17(beps)}, {"c", g17(bc)},
                         {"n", std::to_string(bn)}, {"rmax", g17(rmax)}};
            if (bcount > 0) s.entries.emplace_back("count", std::to_string(bcount));
            else s.entries.emplace_back("count", std::to_string(gf.grid));
            if (!bmodel.empty()) s.entries.emplace_back("model", bmodel);
            return cmd_bounds(s, gf);
        }
        if (*growth) return cmd_growth(gp, profiles, gf);
        if (*forms) return cmd_forms(exprs, fn, fpoints);
        if (*ckn) {
            ScenarioSection s;
            s.kind = "ckn";
            s.id = "cli";
            s.entries = {{"case", ckn_case_s}, {"a", g17(ca)},   {"b", g17(cb)},
                         {"n", std::to_string(cn)}, {"A", g17(cA)}, {"A1", g17(cA1)},
                         {"B", g17(cB)},       {"B1", g17(cB1)}, {"c", g17(cc)},
                         {"T", g17(cknT)}};
            if (!ckn_model.empty()) s.entries.emplace_back("model", ckn_model);
            if (!ckn_u.empty()) s.entries.emplace_back("u", ckn_u);
            return run_section_command(s);
        }
        if (*hardy) {
            ScenarioSection s;
            s.kind = "hardy";
            s.id = "cli";
            s.entries = {{"p", g17(hp)}, {"n", std::to_string(hn)}, {"A", g17(hA)},
                         {"s", g17(hs)}, {"r2", g17(hr2)}};
            if (hr1 > 0) s.entries.emplace_back("r1", g17(hr1));
            if (!hmodel.empty()) s.entries.emplace_back("model", hmodel);
            return run_section_command(s);
        }
        if (*costa) {
            ScenarioSection s;
            s.kind = "costa";
            s.id = "cli";
            s.entries = {{"case", costa_case_s}, {"row", costa_row},
                         {"n", std::to_string(con)}, {"param", g17(costa_param)},
                         {"A", g17(coA)},        {"A1", g17(coA1)},
                         {"B", g17(coB)},        {"B1", g17(coB1)}};
            return run_section_command(s);
        }
        if (*mono) {
            ScenarioSection s;
            s.kind = "mono";
            s.id = "cli";
            s.entries = {{"row", mrow},  {"k", std::to_string(mk)}, {"n", std::to_string(mn)},
                         {"A", g17(mA)}, {"A1", g17(mA1)},          {"B", g17(mB)},
                         {"B1", g17(mB1)}, {"alpha", g17(malpha)},  {"beta", g17(mbeta)},
                         {"eps-decay", g17(meps)}};
            if (mdF >= 0) s.entries.emplace_back("dF", g17(mdF));
            else s.entries.emplace_back("F", mF);
            if (!mE.empty()) s.entries.emplace_back("E", mE);
            return run_section_command(s);
        }
        if (*report) {
            std::ifstream in(scenario_path, std::ios::binary);
            if (!in) {
                std::cerr << "cannot open scenario file " << scenario_path << '\n';
                return 2;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            return run_report(buf.str(), std::cout);
        }
    } catch (const rcg::hypothesis_error& e) {
        std::cerr << "hypothesis error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
