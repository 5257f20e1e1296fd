#pragma once

#include <cstdint>
#include <vector>

#include "rcg/ode.hpp"
#include "rcg/radial.hpp"

namespace testutil {

// splitmix64: reproducible across platforms, unlike the std distributions
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform(double a, double b) {
        return a + (b - a) * static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    int uniform_int(int a, int b) {
        return a + static_cast<int>(next() % static_cast<std::uint64_t>(b - a + 1));
    }
};

// closed-form differentiable catalog used by several property suites
inline std::vector<rcg::RadialExpr> closed_form_catalog() {
    using namespace rcg;
    return {
        rx::power(2.0, 1.5),
        rx::power(1.0, -0.5),
        rx::power_log(1.5, 2.0, 1.5),
        rx::sin(1.0, 2.0),
        rx::cos(0.5, 1.0),
        rx::sinh(1.0, 1.0),
        rx::cosh(2.0, 0.5),
        rx::poly_ratio({1.0, 2.0, 1.0}, {1.0, 0.0, 1.0}),
        rx::shift(rx::power(1.0, -2.0), 1.0),
        rx::power(1.0, 2.0) + rx::sin(1.0, 1.0),
        rx::power(1.0, 1.0) * rx::cosh(1.0, 1.0),
        rx::sinh(1.0, 1.0) / rx::cosh(1.0, 1.0),
        -rx::power_log(1.0, 1.0, -1.0),
    };
}

// the coefficient catalog of the duality round-trip suite
struct CatalogEntry {
    rcg::RadialExpr G;
    bool singular;
};

inline std::vector<CatalogEntry> coefficient_catalog() {
    using namespace rcg;
    std::vector<CatalogEntry> out;
    out.push_back({rx::constant(0.0), false});
    out.push_back({rx::constant(1.0), false});
    out.push_back({rx::constant(-1.0), false});
    for (double A : {1.0, 1.5, 2.0})
        out.push_back({rx::power(-A * (A - 1), -2.0), A != 1.0});
    for (double B1 : {0.3, 1.0})
        out.push_back({rx::power(B1 * (1 - B1), -2.0), B1 != 1.0});
    return out;
}

} // namespace testutil
