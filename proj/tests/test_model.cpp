#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "rcg/model.hpp"

using namespace rcg;
using Catch::Approx;

TEST_CASE("models from curvature") {
    auto flat = from_curvature(3, rx::constant(0.0), 5.0);
    for (double r : {0.5, 2.0, 4.0}) CHECK(flat.f(r) == Approx(r).epsilon(1e-9));

    auto hyp = from_curvature(2, rx::constant(-1.0), 5.0);
    for (double r : {0.5, 2.0, 4.0}) CHECK(hyp.f(r) == Approx(std::sinh(r)).epsilon(1e-9));

    // power curvature: the kappa = 1 solution matches the power branch up to
    // normalization; the residual oracle pins the coefficient relation
    const double A = 2.0;
    SolverOptions opts;
    opts.seed = SolverOptions::SeedHint::singular;
    auto pw = from_curvature(3, rx::power(-A * (A - 1), -2.0), 4.0, opts);
    const double c = pw.f(1.0);
    for (double r : {1.5, 2.5, 3.5})
        CHECK(pw.f(r) == Approx(c * std::pow(r, A)).epsilon(1e-6));
    for (double r : {0.5, 1.0, 3.0}) {
        // relative residual: the kappa = 1 seed makes the amplitude O(1/eps)
        const double scale = std::abs(pw.warp_second.eval(r)) + 1.0;
        CHECK(std::abs(pw.warp_second.eval(r) + (-A * (A - 1) / (r * r)) * pw.f(r)) / scale <
              1e-8);
    }
}

TEST_CASE("model quantities") {
    auto euclid3 = make_model(3, rx::power(1.0, 1.0), 5.0);
    CHECK(laplacian_r(euclid3).eval(0.5) == Approx(4.0).epsilon(1e-12));
    CHECK(hess_eigenvalue(euclid3).eval(2.0) == Approx(0.5).epsilon(1e-12));
    CHECK(mean_curvature(euclid3).eval(2.0) == Approx(0.5).epsilon(1e-12));

    auto hyp2 = make_model(2, rx::sinh(1.0, 1.0), 5.0);
    CHECK(laplacian_r(hyp2).eval(1.0) == Approx(1.0 / std::tanh(1.0)).epsilon(1e-12));

    auto power = make_model(4, rx::power(1.0, 2.0), 5.0, true);
    CHECK(laplacian_r(power).eval(1.5) == Approx(3.0 * 2.0 / 1.5).epsilon(1e-12));
    CHECK(power.K(2.0) == Approx(-2.0 / 4.0).epsilon(1e-12));
    CHECK(power.ric_rad(2.0) == Approx(3 * -0.5).epsilon(1e-12));
}

TEST_CASE("non-unit initial slope requires the generalized flag") {
    CHECK_THROWS_AS(make_model(3, rx::power(1.0, 2.0), 5.0), hypothesis_error);
    CHECK_NOTHROW(make_model(3, rx::power(1.0, 2.0), 5.0, true));
}

TEST_CASE("bound catalog rows") {
    const int n = 3;
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::two_sided_ratio;
        h.A = 2;
        h.A1 = 0;
        auto bp = bound_catalog(h, n);
        REQUIRE(bp.lower);
        REQUIRE(bp.upper);
        CHECK(bp.lower->eval(1.0) == Approx(1.0)); // (1+sqrt(1))/2
        CHECK(bp.upper->eval(1.0) == Approx(2.0)); // (1+sqrt(9))/2
        CHECK(bp.applies_to == BoundRegister::hessian_eigenvalue);
    }
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::sec_upper_positive;
        h.B = 1;
        auto bp = bound_catalog(h, n);
        REQUIRE(bp.lower);
        CHECK(bp.lower->eval(1.0) == Approx(1.0)); // |1-1/2|+1/2
        CHECK_FALSE(bp.upper);
    }
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::ric_lower_power;
        h.A = 1;
        auto bp = bound_catalog(h, n);
        REQUIRE(bp.upper);
        CHECK(bp.upper->eval(1.0) == Approx(n - 1.0)); // Euclidean-sharp
        CHECK(bp.applies_to == BoundRegister::laplacian);
        CHECK_THROWS_AS(bound_catalog(h, n, BoundRegister::hessian_eigenvalue),
                        hypothesis_error);
    }
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::ric_lower_positive;
        h.B1 = 0.5;
        auto bp = bound_catalog(h, n);
        CHECK(bp.upper->eval(2.0) ==
              Approx((n - 1) * (1 + std::sqrt(2.0)) / 4.0).epsilon(1e-12));
    }
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::flat;
        auto bp = bound_catalog(h, n);
        CHECK(bp.lower->eval(2.0) == Approx(0.5));
        CHECK(bp.upper->eval(2.0) == Approx(0.5));
    }
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::mixed_sign;
        h.A = 2;
        h.B = 0.25;
        auto bp = bound_catalog(h, n);
        CHECK(bp.lower->eval(1.0) == Approx(0.5));  // (1+sqrt(0))/2
        CHECK(bp.upper->eval(1.0) == Approx(2.0));  // (1+sqrt(9))/2
    }
    {
        CurvatureHypothesis h;
        h.kind = CurvatureHypothesis::Kind::equality_power;
        h.A = 0.5; // below the admissible range
        CHECK_THROWS_AS(bound_catalog(h, n), hypothesis_error);
    }
}

TEST_CASE("verify_bounds: sharpness witnesses") {
    // power warp with the matching lower-bound hypothesis: equality margins
    const double A = 2.0;
    auto M = make_model(3, rx::power(1.0, A), 4.0, true);
    CurvatureHypothesis h;
    h.kind = CurvatureHypothesis::Kind::sec_lower_power;
    h.A = A;
    auto cert = verify_bounds(M, h);
    CHECK(cert.pass);
    CHECK(std::abs(cert.worst_margin) < 1e-8);

    auto euclid = make_model(3, rx::power(1.0, 1.0), 4.0);
    CurvatureHypothesis hf;
    hf.kind = CurvatureHypothesis::Kind::flat;
    auto cf = verify_bounds(euclid, hf);
    CHECK(cf.pass);
    CHECK(std::abs(cf.worst_margin) < 1e-12);

    // sphere warp against the quarter-pinch lower hypothesis B1 = 0
    auto sphere = make_model(3, rx::sin(1.0, 1.0), M_PI * 0.999);
    CurvatureHypothesis hs;
    hs.kind = CurvatureHypothesis::Kind::sec_lower_quarter;
    hs.B1 = 0;
    auto cs = verify_bounds(sphere, hs);
    CHECK(cs.pass);
}

TEST_CASE("verify_bounds: hypothesis violation names a radius") {
    auto euclid = make_model(3, rx::power(1.0, 1.0), 4.0);
    CurvatureHypothesis h;
    h.kind = CurvatureHypothesis::Kind::sec_upper_power; // needs K <= -A1(A1-1)/r^2 < 0
    h.A1 = 2;
    CHECK_THROWS_WITH(verify_bounds(euclid, h),
                      Catch::Matchers::ContainsSubstring("fails at r="));
}

TEST_CASE("curvature identity for the Laplacian along models") {
    // g1 = Delta r satisfies g1' + g1^2/(n-1) + (n-1)K = 0 on every model
    struct Probe {
        ModelManifold M;
    };
    std::vector<ModelManifold> models;
    models.push_back(make_model(3, rx::power(1.0, 1.0), 4.0));
    models.push_back(make_model(3, rx::sinh(1.0, 1.0), 4.0));
    models.push_back(make_model(4, rx::sin(1.0, 1.0), 3.0));
    models.push_back(make_model(3, rx::power(1.0, 2.0), 4.0, true));
    models.push_back(make_model(5, rx::power(1.0, 1.0) + rx::power(1.0, 3.0), 4.0));
    for (const auto& M : models) {
        auto g1 = laplacian_r(M);
        auto g1p = g1.derivative();
        for (double r = 0.2; r < 0.95 * M.T; r += 0.17) {
            const double g = g1.eval(r);
            const double res = g1p.eval(r) + g * g / (M.n - 1) + (M.n - 1) * M.K(r);
            CHECK(std::abs(res) < 1e-6);
        }
    }
}

TEST_CASE("shifted hypotheses converge to the unshifted margins") {
    auto euclid = make_model(3, rx::power(1.0, 1.0), 5.0);
    CurvatureHypothesis h;
    h.kind = CurvatureHypothesis::Kind::ric_lower_power;
    h.A = 1.5;

    auto min_hyp_margin = [&](double c) {
        CurvatureHypothesis hc = h;
        hc.shift = c;
        auto cert = verify_bounds(euclid, hc);
        double m = 1e300;
        for (double v : cert.hypothesis_margins) m = std::min(m, v);
        return m;
    };

    const double base = min_hyp_margin(0.0);
    double prev = -1e300;
    for (double c : {0.4, 0.2, 0.1, 0.05, 0.01, 1e-3, 1e-5}) {
        const double m = min_hyp_margin(c);
        CHECK(m >= prev - 1e-12); // margins tighten monotonically as c decreases
        prev = m;
    }
    CHECK(std::abs(prev - base) <= 1e-6);
}

TEST_CASE("power exponent conversion round-trips") {
    testutil::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const double a2 = rng.uniform(0.0, 50.0);
        const double A = power_exponent_from_square(a2);
        CHECK(std::abs(square_from_power_exponent(A) - a2) <= 1e-12 * std::max(1.0, a2));
        const double A0 = rng.uniform(1.0, 8.0);
        const double back = power_exponent_from_square(square_from_power_exponent(A0));
        CHECK(std::abs(back - A0) <= 1e-12 * A0);
    }
}

TEST_CASE("bound tables export CSV") {
    CurvatureHypothesis h;
    h.kind = CurvatureHypothesis::Kind::two_sided_ratio;
    h.A = 2;
    h.A1 = 0;
    auto bp = bound_catalog(h, 3);
    std::ostringstream os;
    write_bound_table_csv(os, bp, nullptr, 1.0, 5.0, 5);
    const std::string text = os.str();
    CHECK(text.rfind("r,lower,value,upper\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK(text.find("1,1,,2\n") != std::string::npos);
}

TEST_CASE("sectional/Ricci relabel flag is carried") {
    CurvatureHypothesis h;
    h.kind = CurvatureHypothesis::Kind::sec_lower_power;
    h.A = 2;
    h.use_full_curvature = true; // on models both reduce to the same scalar K
    auto M = make_model(3, rx::power(1.0, 2.0), 4.0, true);
    CHECK(verify_bounds(M, h).pass);
}
