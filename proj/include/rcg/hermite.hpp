#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace rcg {

/// Piecewise quintic Hermite interpolant through (t_i, y_i, y'_i, y''_i).
///
/// Matching value, first and second derivative at every node keeps the
/// interpolation error O(h^6) between nodes, so residual checks that
/// differentiate the curve twice stay meaningful at 1e-8 tolerances.
class QuinticCurve {
public:
    QuinticCurve() = default;
    QuinticCurve(std::vector<double> t, std::vector<double> y,
                 std::vector<double> yp, std::vector<double> ypp)
        : t_(std::move(t)), y_(std::move(y)), yp_(std::move(yp)), ypp_(std::move(ypp)) {
        if (t_.size() < 2 || y_.size() != t_.size() || yp_.size() != t_.size() ||
            ypp_.size() != t_.size())
            throw domain_error("QuinticCurve: need >= 2 nodes with matching value arrays");
        for (std::size_t i = 1; i < t_.size(); ++i)
            if (!(t_[i] > t_[i - 1]))
                throw domain_error("QuinticCurve: nodes must be strictly increasing");
    }

    double tmin() const { return t_.front(); }
    double tmax() const { return t_.back(); }
    std::size_t size() const { return t_.size(); }
    const std::vector<double>& nodes() const { return t_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<double>& derivs() const { return yp_; }
    const std::vector<double>& derivs2() const { return ypp_; }

    double value(double t) const { return eval(t, 0); }
    double deriv(double t) const { return eval(t, 1); }
    double deriv2(double t) const { return eval(t, 2); }

    /// Integral of the interpolant from tmin() to t (exact per segment).
    double integral_from_start(double t) const {
        ensure_cumulative();
        std::size_t i = segment(t);
        return cum_[i] + segment_integral(i, t);
    }

private:
    std::vector<double> t_, y_, yp_, ypp_;
    mutable std::vector<double> cum_; // cumulative integrals at nodes

    std::size_t segment(double t) const {
        if (t < t_.front() - 1e-12 * std::max(1.0, std::abs(t_.front())) ||
            t > t_.back() + 1e-12 * std::max(1.0, std::abs(t_.back())))
            throw domain_error("QuinticCurve: evaluation outside [tmin, tmax]");
        auto it = std::upper_bound(t_.begin(), t_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - t_.begin());
        if (i == 0) return 0;
        if (i >= t_.size()) return t_.size() - 2;
        return i - 1;
    }

    double eval(double t, int order) const {
        std::size_t i = segment(t);
        const double h = t_[i + 1] - t_[i];
        const double s = (t - t_[i]) / h;
        const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        const double y0 = y_[i], y1 = y_[i + 1];
        const double d0 = yp_[i] * h, d1 = yp_[i + 1] * h;
        const double a0 = ypp_[i] * h * h, a1 = ypp_[i + 1] * h * h;
        if (order == 0) {
            const double h00 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
            const double h10 = s - 6 * s3 + 8 * s4 - 3 * s5;
            const double h20 = 0.5 * (s2 - 3 * s3 + 3 * s4 - s5);
            const double h01 = 10 * s3 - 15 * s4 + 6 * s5;
            const double h11 = -4 * s3 + 7 * s4 - 3 * s5;
            const double h21 = 0.5 * (s3 - 2 * s4 + s5);
            return y0 * h00 + d0 * h10 + a0 * h20 + y1 * h01 + d1 * h11 + a1 * h21;
        }
        if (order == 1) {
            const double g00 = -30 * s2 + 60 * s3 - 30 * s4;
            const double g10 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
            const double g20 = 0.5 * (2 * s - 9 * s2 + 12 * s3 - 5 * s4);
            const double g01 = 30 * s2 - 60 * s3 + 30 * s4;
            const double g11 = -12 * s2 + 28 * s3 - 15 * s4;
            const double g21 = 0.5 * (3 * s2 - 8 * s3 + 5 * s4);
            return (y0 * g00 + d0 * g10 + a0 * g20 + y1 * g01 + d1 * g11 + a1 * g21) / h;
        }
        const double q00 = -60 * s + 180 * s2 - 120 * s3;
        const double q10 = -36 * s + 96 * s2 - 60 * s3;
        const double q20 = 0.5 * (2 - 18 * s + 36 * s2 - 20 * s3);
        const double q01 = 60 * s - 180 * s2 + 120 * s3;
        const double q11 = -24 * s + 84 * s2 - 60 * s3;
        const double q21 = 0.5 * (6 * s - 24 * s2 + 20 * s3);
        return (y0 * q00 + d0 * q10 + a0 * q20 + y1 * q01 + d1 * q11 + a1 * q21) / (h * h);
    }

    // Exact integral of the quintic over [t_i, t_i + (t - t_i)].
    double segment_integral(std::size_t i, double t) const {
        if (t <= t_[i]) return 0.0;
        // integrate the full closed form by Gauss-Legendre 5 (exact for quintics)
        static const double xs[5] = {-0.906179845938663992797626878299,
                                     -0.538469310105683091036314420700, 0.0,
                                     0.538469310105683091036314420700,
                                     0.906179845938663992797626878299};
        static const double ws[5] = {0.236926885056189087514264040720,
                                     0.478628670499366468041291514836,
                                     0.568888888888888888888888888889,
                                     0.478628670499366468041291514836,
                                     0.236926885056189087514264040720};
        const double a = t_[i], b = t;
        const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
        double acc = 0;
        for (int q = 0; q < 5; ++q) acc += ws[q] * eval(c + hw * xs[q], 0);
        return acc * hw;
    }

    void ensure_cumulative() const {
        if (!cum_.empty()) return;
        cum_.resize(t_.size(), 0.0);
        for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
            const double h = t_[i + 1] - t_[i];
            // exact quintic segment integral
            const double part = h * (0.5 * (y_[i] + y_[i + 1]) +
                                     h * (yp_[i] - yp_[i + 1]) / 10.0 +
                                     h * h * (ypp_[i] + ypp_[i + 1]) / 120.0);
            cum_[i + 1] = cum_[i] + part;
        }
    }
};

} // namespace rcg
