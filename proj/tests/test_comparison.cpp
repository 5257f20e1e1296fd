#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "rcg/comparison.hpp"
#include "rcg/duality.hpp"

using namespace rcg;
using Catch::Approx;

namespace {
JacobiSolution solved(double gconst, double kappa, double T = 3.0) {
    return solve_jacobi(rx::constant(gconst), kappa, T);
}
RiccatiSolution solved_r(double gconst, double kappa, double T = 3.0) {
    return solve_riccati(rx::constant(gconst), kappa, T);
}
} // namespace

TEST_CASE("second-order comparison: linear vs sinh") {
    auto cert = check_sturm(solved(0.0, 1.0), solved(-1.0, 1.0));
    CHECK(cert.pass);
    CHECK(cert.worst_margin >= -1e-9);
    CHECK(cert.t_order_ok);
}

TEST_CASE("second-order comparison: equality case has zero margins") {
    auto cert = check_sturm(solved(-1.0, 1.0), solved(-1.0, 1.0));
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) < 1e-9);
}

TEST_CASE("second-order comparison: violated coefficient ordering throws") {
    CHECK_THROWS_AS(check_sturm(solved(-1.0, 1.0), solved(0.0, 1.0)), hypothesis_error);
}

TEST_CASE("first-order comparison: 1/t vs coth") {
    auto cert = check_riccati_pair(solved_r(0.0, 1.0), solved_r(-1.0, 1.0));
    CHECK(cert.pass);
    CHECK(cert.worst_margin >= -1e-9);
}

TEST_CASE("first-order comparison: equal inputs give zero margins") {
    auto cert = check_riccati_pair(solved_r(-1.0, 1.0), solved_r(-1.0, 1.0));
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) < 1e-9);
}

TEST_CASE("kappa ordering is a precondition") {
    CHECK_THROWS_AS(check_riccati_pair(solved_r(0.0, 2.0), solved_r(0.0, 1.0)),
                    hypothesis_error);
}

TEST_CASE("mixed first-vs-second order") {
    auto cert = check_mixed_I(solved_r(0.0, 1.0), solved(-1.0, 1.0));
    CHECK(cert.pass);
    // degenerate case: compare a transform against its source
    auto f = solved(-1.0, 1.0);
    auto cert2 = check_mixed_I(transform(f), f);
    CHECK(cert2.pass);
    CHECK(std::abs(cert2.worst_margin) < 1e-9);
}

TEST_CASE("mixed comparison reproduces the power-model estimate") {
    const int n = 4;
    const double A = 2.0;
    const auto G = rx::power(-A * (A - 1), -2.0);
    // Laplacian of the power model as a first-order candidate
    auto g1 = make_riccati_candidate(rx::power((n - 1.0) * A, -1.0), G, n - 1.0, 1e-3, 4.0);
    // the auxiliary second-order solution phi = (n-1) r^A
    auto f2 = make_jacobi_candidate(rx::power(n - 1.0, A), G, n - 1.0, 1e-3, 4.0);
    auto cert = check_mixed_I(g1, f2);
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) < 1e-9);
}

TEST_CASE("mixed second-vs-first order") {
    auto cert = check_mixed_II(solved(0.0, 1.0), solved_r(-1.0, 1.0));
    CHECK(cert.pass);
    auto f = solved(-1.0, 1.0);
    auto cert2 = check_mixed_II(f, transform(f));
    CHECK(std::abs(cert2.worst_margin) < 1e-9);
    CHECK_THROWS_AS(check_mixed_II(solved(-1.0, 1.0), solved_r(0.0, 1.0)), hypothesis_error);
}

TEST_CASE("supersolution and subsolution residual signs are enforced") {
    // sine presented as a supersolution for the wrong coefficient
    auto bad = make_jacobi_candidate(rx::sin(1.0, 1.0), rx::constant(2.0), 1.0, 1e-3, 3.0);
    auto good_sub = solved(-1.0, 1.0);
    CHECK_THROWS_AS(check_sturm(bad, good_sub), hypothesis_error);
    // a genuine supersolution of G = 0: sine has f'' + 0 f = -sin <= 0
    auto super = make_jacobi_candidate(rx::sin(1.0, 1.0), rx::constant(0.0), 1.0, 1e-3, 3.0);
    auto cert = check_sturm(super, solved(0.0, 1.0));
    CHECK(cert.pass);
}

TEST_CASE("monotone wronskian along the comparison") {
    auto f1 = solved(0.0, 1.0);
    auto f2 = solved(-1.0, 1.0);
    double prev = -1e300;
    for (double t = 0.01; t <= 2.8; t += 0.01) {
        const double w = f2.fprime(t) * f1.f(t) - f1.fprime(t) * f2.f(t);
        CHECK(w - prev >= -1e-8);
        prev = w;
    }
}

TEST_CASE("randomized catalog property across all four checkers") {
    testutil::Rng rng(2024);
    Tolerances tol;
    for (int rep = 0; rep < 25; ++rep) {
        const double a1 = rng.uniform(1.0, 2.5);
        const double a2 = a1 + rng.uniform(0.0, 1.0);
        const double k1 = rng.uniform(0.5, 3.0);
        const double k2 = k1 + rng.uniform(0.0, 3.0 - k1 + 0.01);
        const auto G1 = rx::power(-a1 * (a1 - 1), -2.0);
        const auto G2 = rx::power(-a2 * (a2 - 1), -2.0);
        SolverOptions opts;
        opts.seed = SolverOptions::SeedHint::singular;
        auto f1 = solve_jacobi(G1, k1, 3.0, opts);
        auto f2 = solve_jacobi(G2, k2, 3.0, opts);
        auto g1 = solve_riccati(G1, k1, 3.0, opts);
        auto g2 = solve_riccati(G2, k2, 3.0, opts);
        CHECK(check_sturm(f1, f2, tol).pass);
        CHECK(check_riccati_pair(g1, g2, tol).pass);
        CHECK(check_mixed_I(g1, f2, tol).pass);
        CHECK(check_mixed_II(f1, g2, tol).pass);
    }
}

TEST_CASE("swap duality: transformed comparison agrees with the direct one") {
    testutil::Rng rng(99);
    for (int rep = 0; rep < 10; ++rep) {
        const double a1 = rng.uniform(1.0, 2.0);
        const double a2 = a1 + rng.uniform(0.0, 1.0);
        SolverOptions opts;
        opts.seed = SolverOptions::SeedHint::singular;
        auto f1 = solve_jacobi(rx::power(-a1 * (a1 - 1), -2.0), 1.0, 3.0, opts);
        auto f2 = solve_jacobi(rx::power(-a2 * (a2 - 1), -2.0), 1.0, 3.0, opts);
        const bool direct = check_sturm(f1, f2).pass;
        const bool swapped = check_mixed_I(transform(f1), f2).pass;
        CHECK(direct == swapped);
    }
}

TEST_CASE("certificate serialization") {
    auto cert = check_sturm(solved(0.0, 1.0), solved(-1.0, 1.0));
    const auto rec = cert.to_record();
    CHECK(rec.find("jacobi-pair pass") == 0);
    CHECK(rec.find("worst_margin=") != std::string::npos);
    std::ostringstream os;
    cert.write_margins_csv(os);
    const auto text = os.str();
    CHECK(text.rfind("r,hypothesis_margin,conclusion_margin\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') ==
          static_cast<long>(cert.radii.size()) + 1);
}
