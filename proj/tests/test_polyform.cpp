#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rcg/polyform.hpp"

using namespace rcg;

namespace {

Polynomial var(int n, int i) { return Polynomial::variable(n, i); }

PolyForm random_form(testutil::Rng& rng, int n, int k, int max_deg = 3) {
    PolyForm w(n, k);
    const int terms = rng.uniform_int(1, 3);
    for (int t = 0; t < terms; ++t) {
        Polynomial p = Polynomial::constant(n, rng.uniform_int(-3, 3));
        const int factors = rng.uniform_int(0, max_deg);
        for (int f = 0; f < factors; ++f) p = p * var(n, rng.uniform_int(0, n - 1));
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < k) {
            const int i = rng.uniform_int(0, n - 1);
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
        }
        w = w + PolyForm::term(n, p, idx);
    }
    return w;
}

/// Exact integral of a polynomial over the box [-1, 1]^n.
Rat box_moment(const Polynomial& p) {
    Rat acc = 0;
    for (const auto& [k, c] : p.terms()) {
        Rat m = c;
        bool zero = false;
        for (int e : k) {
            if (e % 2 == 1) {
                zero = true;
                break;
            }
            m *= Rat(2, e + 1);
        }
        if (!zero) acc += m;
    }
    return acc;
}

/// Polynomial bump vanishing on the box boundary.
Polynomial boundary_bump(int n) {
    Polynomial w = Polynomial::constant(n, 1);
    for (int i = 0; i < n; ++i) {
        Polynomial f = Polynomial::constant(n, 1) - var(n, i) * var(n, i);
        w = w * f;
    }
    return w;
}

PolyForm scale(const PolyForm& w, const Polynomial& p) {
    PolyForm out(w.n(), w.k());
    for (const auto& [idx, q] : w.components()) out.add(idx, q * p);
    return out;
}

} // namespace

TEST_CASE("exterior derivative examples") {
    const int n = 4;
    auto w1 = PolyForm::term(n, var(n, 0), {0}); // x1 dx1
    CHECK(d(w1).is_zero());
    auto w2 = PolyForm::term(n, var(n, 3), {0}); // x4 dx1
    CHECK_FALSE(d(w2).is_zero());
    CHECK(d(PolyForm::term(n, Polynomial::constant(n, 7), {})).is_zero());
    CHECK_THROWS_AS(d(PolyForm::term(2, Polynomial::constant(2, 1), {0, 1})), domain_error);
}

TEST_CASE("codifferential examples") {
    const int n = 4;
    auto d1 = codiff(PolyForm::term(n, var(n, 0), {0})); // -> -1
    REQUIRE(d1.components().size() == 1);
    CHECK(d1.components().begin()->second.eval({0, 0, 0, 0}) == Rat(-1));
    CHECK(codiff(PolyForm::term(n, var(n, 3), {0})).is_zero()); // -d(x4)/dx1 = 0
    CHECK(codiff(PolyForm::term(n, Polynomial::constant(n, 1), {0})).is_zero());
    CHECK_THROWS_AS(codiff(PolyForm::term(n, Polynomial::constant(n, 1), {})), domain_error);
}

TEST_CASE("laplacian examples") {
    const int n = 4;
    CHECK(laplacian(PolyForm::term(n, var(n, 0), {0})).is_zero());
    auto w3 = PolyForm::term(n, var(n, 0) + var(n, 3), {0});
    CHECK(laplacian(w3).is_zero());
    auto w = PolyForm::term(n, var(n, 0) * var(n, 0), {0}); // x1^2 dx1
    auto expect = PolyForm::term(n, Polynomial::constant(n, 2), {0});
    CHECK(laplacian(w) == expect);
    // 0-forms: the coordinate Laplacian
    auto u = PolyForm::term(n, var(n, 0) * var(n, 0) * var(n, 1), {}); // x1^2 x2
    auto lap = laplacian(u);
    CHECK(lap == PolyForm::term(n, Polynomial::constant(n, 2) * var(n, 1), {}));
}

TEST_CASE("hodge star") {
    auto w = PolyForm::term(2, Polynomial::constant(2, 1), {0}); // dx1 in R^2
    auto s = hodge_star(w);
    REQUIRE(s.components().size() == 1);
    CHECK(s.components().begin()->first == std::vector<int>{1});
    CHECK(s.components().begin()->second.eval({0, 0}) == Rat(1));

    auto one = PolyForm::term(3, Polynomial::constant(3, 1), {});
    auto vol = hodge_star(one);
    CHECK(vol.components().begin()->first == std::vector<int>({0, 1, 2}));

    testutil::Rng rng(3);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = rng.uniform_int(1, 4);
        const int k = rng.uniform_int(0, n);
        auto f = random_form(rng, n, k);
        auto ss = hodge_star(hodge_star(f));
        const int sign = ((k * (n - k)) % 2 == 0) ? 1 : -1;
        CHECK(ss == f * Rat(sign));
    }
}

TEST_CASE("classification of the four reference forms") {
    const int n = 4;
    auto w1 = parse_form("x1 dx1", n);
    auto c1 = classify(w1);
    CHECK((c1.closed && !c1.coclosed && c1.harmonic));

    auto w2 = parse_form("x4 dx1", n);
    auto c2 = classify(w2);
    CHECK((!c2.closed && c2.coclosed && c2.harmonic));

    auto w3 = parse_form("(x1 + x4) dx1", n);
    auto c3 = classify(w3);
    CHECK((!c3.closed && !c3.coclosed && c3.harmonic));

    auto w4 = parse_form("x1*x4 dx1 + x4 dx4", n);
    auto c4 = classify(w4);
    CHECK((!c4.closed && !c4.coclosed && c4.harmonic));

    auto dx1 = parse_form("dx1", n);
    auto cd = classify(dx1);
    CHECK((cd.closed && cd.coclosed && cd.harmonic));
}

TEST_CASE("d after d and codiff after codiff vanish") {
    testutil::Rng rng(17);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = rng.uniform_int(2, 4);
        const int k = rng.uniform_int(0, n);
        auto w = random_form(rng, n, k);
        if (k + 2 <= n) CHECK(d(d(w)).is_zero());
        if (k - 2 >= 0) CHECK(codiff(codiff(w)).is_zero());
    }
}

TEST_CASE("adjointness over a compactly supported pairing") {
    testutil::Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = rng.uniform_int(2, 4);
        const int k = rng.uniform_int(1, n);
        auto sigma = random_form(rng, n, k - 1, 2);
        auto rho = random_form(rng, n, k, 2);
        auto sigma_c = scale(sigma, boundary_bump(n)); // vanishes on the box boundary
        const Rat lhs = box_moment(inner_product(d(sigma_c), rho));
        const Rat rhs = box_moment(inner_product(sigma_c, codiff(rho)));
        CHECK(lhs == rhs); // exact rational moments: the sign convention is pinned
    }
}

TEST_CASE("pointwise inequality report") {
    const int n = 4;
    // constant coefficients: both sides vanish
    auto cst = parse_form("dx1", n);
    auto rep0 = condition_w_report(cst, {{Rat(0), Rat(0), Rat(0), Rat(0)}});
    CHECK(rep0.holds_at_all_samples);
    CHECK(rep0.lhs == 0);
    CHECK(rep0.rhs == 0);

    // closed form: the pairing side vanishes
    auto w1 = parse_form("x1 dx1", n);
    auto rep1 = condition_w_report(w1, {{Rat(1), Rat(0), Rat(0), Rat(2)}});
    CHECK(rep1.holds_at_all_samples);
    CHECK(rep1.lhs == 0);

    // w2 = x4 dx1 at (0,0,0,1): equality, both sides exactly 2
    auto w2 = parse_form("x4 dx1", n);
    auto rep2 = condition_w_report(w2, {{Rat(0), Rat(0), Rat(0), Rat(1)}});
    CHECK(rep2.holds_at_all_samples);
    CHECK(rep2.lhs == Rat(2));
    CHECK(rep2.rhs == Rat(2));
}

TEST_CASE("parser round trips") {
    testutil::Rng rng(41);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = rng.uniform_int(2, 4);
        const int k = rng.uniform_int(0, n);
        auto w = random_form(rng, n, k);
        auto back = parse_form(to_string(w), n);
        CHECK(back == w);
    }
    // rationals, powers, parentheses
    auto w = parse_form("3/4*x1^2 dx2 - (x1 + 2*x3)*x2 dx3", 3);
    CHECK_FALSE(w.is_zero());
    auto again = parse_form(to_string(w), 3);
    CHECK(again == w);
    CHECK_THROWS_AS(parse_form("x9 dx1", 3), domain_error);
    CHECK_THROWS_AS(parse_form("x1 dx1 + dx1^dx2", 3), domain_error);
}

TEST_CASE("degree bookkeeping in wedge products") {
    const int n = 3;
    auto a = parse_form("x1 dx1", n);
    auto b = parse_form("x2 dx2", n);
    auto ab = wedge(a, b);
    CHECK(ab.k() == 2);
    auto ba = wedge(b, a);
    CHECK(ab == ba * Rat(-1));
    CHECK(wedge(a, a).is_zero());
}
