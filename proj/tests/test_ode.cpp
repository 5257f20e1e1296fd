#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rcg/ode.hpp"

using namespace rcg;
using Catch::Approx;

TEST_CASE("zero coefficient gives the linear solution") {
    auto s = solve_jacobi(rx::constant(0.0), 1.0, 5.0);
    CHECK(s.t_sup == 5.0);
    for (double t : {0.01, 1.0, 4.0}) CHECK(s.f(t) == Approx(t).epsilon(1e-10));
    CHECK(jacobi_max_residual(s) < 1e-8);
}

TEST_CASE("unit coefficient gives sine with first zero at pi") {
    auto s = solve_jacobi(rx::constant(1.0), 1.0, 5.0);
    CHECK(std::abs(s.t_sup - M_PI) < 1e-6);
    CHECK(std::abs(s.f(1.0) - std::sin(1.0)) < 1e-8);
    CHECK(std::abs(s.fprime(1.0) - std::cos(1.0)) < 1e-8);
    CHECK(jacobi_max_residual(s) < 1e-8);
}

TEST_CASE("negative coefficient gives sinh") {
    auto s = solve_jacobi(rx::constant(-1.0), 1.0, 5.0);
    CHECK(std::abs(s.f(1.0) - std::sinh(1.0)) < 1e-8);
    CHECK(s.t_sup == 5.0);
}

TEST_CASE("kappa scales the initial slope") {
    auto s = solve_jacobi(rx::constant(1.0), 2.5, 3.0);
    CHECK(std::abs(s.f(1.0) - 2.5 * std::sin(1.0)) < 1e-7);
    // f'(0+) recovered by extrapolation at the smallest nodes
    CHECK(s.fprime_values.front() == Approx(2.5).epsilon(1e-6));
}

TEST_CASE("riccati exact solutions") {
    auto flat = solve_riccati(rx::constant(0.0), 1.0, 5.0);
    for (double t : {0.1, 1.0, 5.0}) CHECK(std::abs(flat.g(t) - 1.0 / t) < 1e-8);

    auto hyp = solve_riccati(rx::constant(-1.0), 1.0, 5.0);
    CHECK(std::abs(hyp.g(1.0) - 1.0 / std::tanh(1.0)) < 1e-6);
    CHECK(riccati_max_residual(hyp) < 1e-8);

    auto sph = solve_riccati(rx::constant(1.0), 1.0, 5.0);
    REQUIRE(sph.pole.has_value());
    CHECK(std::abs(*sph.pole - M_PI) < 1e-4);
    CHECK(std::abs(sph.g(1.0) - 1.0 / std::tan(1.0)) < 1e-6);
}

TEST_CASE("dual consistency between the two solvers") {
    for (const auto& entry : testutil::coefficient_catalog()) {
        for (double kappa : {0.5, 1.0, 2.0}) {
            SolverOptions opts;
            if (entry.singular) opts.seed = SolverOptions::SeedHint::singular;
            auto f = solve_jacobi(entry.G, kappa, 4.0, opts);
            auto g = solve_riccati(entry.G, kappa, 4.0, opts);
            const double lo = 2 * f.epsilon;
            const double hi = 0.9 * std::min(f.t_sup, g.pole.value_or(g.T));
            for (int i = 0; i <= 200; ++i) {
                const double t = lo + (hi - lo) * i / 200.0;
                const double lhs = g.g(t);
                const double rhs = kappa * f.fprime(t) / f.f(t);
                CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("order convergence of the fixed-step integrator") {
    auto residual_at = [](double h) {
        SolverOptions opts;
        opts.fixed_step = h;
        opts.epsilon = 1e-4;
        auto s = solve_jacobi(rx::constant(-1.0), 1.0, 3.0, opts);
        // measure against the closed form, so the dense interpolant does not cap the order
        double worst = 0;
        for (double t : {0.5, 1.0, 1.5, 2.0, 2.5})
            worst = std::max(worst, std::abs(s.f(t) - std::sinh(t)));
        return worst;
    };
    const double e1 = residual_at(0.1);
    const double e2 = residual_at(0.05);
    CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("singular coefficients demand an explicit hint") {
    auto G = rx::power(-2.0, -2.0); // -2/r^2, non-integrable at 0
    CHECK_THROWS_AS(solve_jacobi(G, 1.0, 3.0), seed_error);
    SolverOptions opts;
    opts.seed = SolverOptions::SeedHint::singular;
    auto s = solve_jacobi(G, 1.0, 3.0, opts);
    CHECK(jacobi_max_residual(s) < 1e-8);
    // solution is proportional to r^2 away from the seed (A = 2 branch)
    const double c = s.f(1.0);
    for (double t : {1.5, 2.0, 2.5})
        CHECK(s.f(t) == Approx(c * t * t).epsilon(1e-6));
}

TEST_CASE("integrable singularity is handled without a hint") {
    auto G = rx::power(0.5, -0.5); // 0.5 r^{-1/2}: unbounded but integrable
    auto s = solve_jacobi(G, 1.0, 2.0);
    CHECK(jacobi_max_residual(s) < 1e-7);
}

TEST_CASE("piecewise coefficient restarts at breakpoints") {
    auto G = rx::piecewise({1.5}, {rx::constant(1.0), rx::constant(-1.0)});
    auto s = solve_jacobi(G, 1.0, 3.0);
    CHECK(std::abs(s.f(1.0) - std::sin(1.0)) < 1e-8);
    CHECK(jacobi_max_residual(s) < 1e-7);
    // past the break the solution follows the sinh/cosh continuation
    const double f0 = std::sin(1.5), fp0 = std::cos(1.5);
    const double t = 2.5, dt = t - 1.5;
    CHECK(std::abs(s.f(t) - (f0 * std::cosh(dt) + fp0 * std::sinh(dt))) < 1e-7);
}

TEST_CASE("residual invariant holds at the spec default") {
    for (const auto& entry : testutil::coefficient_catalog()) {
        SolverOptions opts;
        if (entry.singular) opts.seed = SolverOptions::SeedHint::singular;
        auto s = solve_jacobi(entry.G, 1.0, 4.0, opts);
        CHECK(jacobi_max_residual(s) <= opts.res_tol);
    }
}

TEST_CASE("candidate builders sample closed forms") {
    auto f = make_jacobi_candidate(rx::sinh(1.0, 1.0), rx::constant(-1.0), 1.0, 1e-3, 4.0);
    CHECK(jacobi_max_residual(f) < 1e-7);
    auto g = make_riccati_candidate(rx::cosh(1.0, 1.0) / rx::sinh(1.0, 1.0),
                                    rx::constant(-1.0), 1.0, 1e-3, 4.0);
    CHECK(riccati_max_residual(g) < 1e-7);
    // positivity cutoff: sine candidate stops at pi
    auto fs = make_jacobi_candidate(rx::sin(1.0, 1.0), rx::constant(1.0), 1.0, 1e-3, 6.0);
    CHECK(fs.t_sup < 3.2);
    CHECK(fs.t_sup > 3.1);
}
