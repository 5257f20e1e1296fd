#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace rcg {

/// Exact rational scalar. Classification must not depend on a tolerance, so
/// everything in this module is computed over Q.
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Multivariate polynomials over Q
// ---------------------------------------------------------------------------

class Polynomial {
public:
    using Key = std::vector<int>; // exponents, one per variable

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rat& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_[Key(static_cast<std::size_t>(nvars), 0)] = c;
        return p;
    }
    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        Key k(static_cast<std::size_t>(nvars), 0);
        k[static_cast<std::size_t>(i)] = 1;
        p.terms_[k] = 1;
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rat>& terms() const { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) {
            int s = 0;
            for (int e : k) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r(nvars_);
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) {
                Key k = ka;
                for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
                r.add_term(k, ca * cb);
            }
        return r;
    }
    Polynomial operator*(const Rat& s) const {
        Polynomial r(nvars_);
        if (s == 0) return r;
        r.terms_ = terms_;
        for (auto& [k, c] : r.terms_) c *= s;
        return r;
    }

    Polynomial partial(int i) const {
        Polynomial r(nvars_);
        for (const auto& [k, c] : terms_) {
            const int e = k[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            Key kk = k;
            kk[static_cast<std::size_t>(i)] = e - 1;
            r.add_term(kk, c * e);
        }
        return r;
    }

    Rat eval(const std::vector<Rat>& x) const {
        Rat acc = 0;
        for (const auto& [k, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < k.size(); ++i)
                for (int e = 0; e < k[i]; ++e) t *= x[i];
            acc += t;
        }
        return acc;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    void add_term(const Key& k, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    int nvars_ = 0;
    std::map<Key, Rat> terms_;
};

// ---------------------------------------------------------------------------
// Differential forms with polynomial coefficients on flat R^n
// ---------------------------------------------------------------------------

namespace detail {

/// Sign of sorting `idx` ascending; nullopt when an index repeats.
inline std::optional<int> sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return std::nullopt;
    return sign;
}

} // namespace detail

/// Differential k-form on R^n over the trivial bundle, coefficients exact
/// multivariate polynomials, components stored only on sorted index tuples.
class PolyForm {
public:
    static constexpr int kMaxVars = 8;

    PolyForm() = default;
    PolyForm(int n, int k) : n_(n), k_(k) {
        if (n < 1 || n > kMaxVars) throw domain_error("PolyForm: need 1 <= n <= 8");
        if (k < 0 || k > n) throw domain_error("PolyForm: need 0 <= k <= n");
    }

    static PolyForm zero(int n, int k) { return PolyForm(n, k); }

    /// coef * dx_{indices}; indices are 0-based and need not be sorted.
    static PolyForm term(int n, Polynomial coef, std::vector<int> indices) {
        PolyForm f(n, static_cast<int>(indices.size()));
        for (int i : indices)
            if (i < 0 || i >= n) throw domain_error("PolyForm: index out of range");
        auto sign = detail::sort_sign(indices);
        if (!sign) return f; // repeated index: the wedge collapses
        f.add(indices, *sign > 0 ? coef : -coef);
        return f;
    }

    int n() const { return n_; }
    int k() const { return k_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<std::vector<int>, Polynomial>& components() const { return comps_; }

    PolyForm operator+(const PolyForm& o) const {
        require_same_shape(o);
        PolyForm r = *this;
        for (const auto& [idx, p] : o.comps_) r.add(idx, p);
        return r;
    }
    PolyForm operator-(const PolyForm& o) const {
        require_same_shape(o);
        PolyForm r = *this;
        for (const auto& [idx, p] : o.comps_) r.add(idx, -p);
        return r;
    }
    PolyForm operator*(const Rat& s) const {
        PolyForm r(n_, k_);
        if (s == 0) return r;
        for (const auto& [idx, p] : comps_) r.add(idx, p * s);
        return r;
    }

    bool operator==(const PolyForm& o) const {
        return n_ == o.n_ && k_ == o.k_ && comps_ == o.comps_;
    }

    void add(const std::vector<int>& idx, const Polynomial& p) {
        if (p.is_zero()) return;
        auto it = comps_.find(idx);
        if (it == comps_.end()) {
            comps_[idx] = p;
        } else {
            it->second = it->second + p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

private:
    int n_ = 1, k_ = 0;
    std::map<std::vector<int>, Polynomial> comps_;

    void require_same_shape(const PolyForm& o) const {
        if (n_ != o.n_ || k_ != o.k_)
            throw domain_error("PolyForm: mismatched dimension or degree");
    }
};

namespace detail {

inline PolyForm d_any(const PolyForm& w) {
    PolyForm out(w.n(), w.k() + 1);
    for (const auto& [idx, p] : w.components()) {
        for (int i = 0; i < w.n(); ++i) {
            Polynomial dp = p.partial(i);
            if (dp.is_zero()) continue;
            std::vector<int> nidx;
            nidx.reserve(idx.size() + 1);
            nidx.push_back(i);
            nidx.insert(nidx.end(), idx.begin(), idx.end());
            auto sign = sort_sign(nidx);
            if (!sign) continue;
            out.add(nidx, *sign > 0 ? dp : -dp);
        }
    }
    return out;
}

inline PolyForm codiff_any(const PolyForm& w) {
    PolyForm out(w.n(), w.k() - 1);
    for (const auto& [idx, p] : w.components()) {
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            Polynomial dp = p.partial(idx[pos]);
            if (dp.is_zero()) continue;
            std::vector<int> nidx;
            nidx.reserve(idx.size() - 1);
            for (std::size_t j = 0; j < idx.size(); ++j)
                if (j != pos) nidx.push_back(idx[j]);
            // delta(P dx_I) = -sum_{i in I} dP/dx_i * (contraction sign) dx_{I \ i}
            const Rat s = (pos % 2 == 0) ? Rat(-1) : Rat(1);
            out.add(nidx, dp * s);
        }
    }
    return out;
}

} // namespace detail

/// Exterior derivative (degree error at top degree).
inline PolyForm d(const PolyForm& w) {
    if (w.k() >= w.n()) throw domain_error("d: form already has top degree");
    return detail::d_any(w);
}

/// Flat codifferential, the formal adjoint of d (degree error on 0-forms).
inline PolyForm codiff(const PolyForm& w) {
    if (w.k() <= 0) throw domain_error("codiff: form has degree 0");
    return detail::codiff_any(w);
}

/// Hodge Laplacian with the sign convention Delta = -(d codiff + codiff d);
/// on 0-forms this is the coordinate Laplacian sum of second partials.
inline PolyForm laplacian(const PolyForm& w) {
    PolyForm a = (w.k() < w.n()) ? detail::codiff_any(detail::d_any(w)) : PolyForm(w.n(), w.k());
    PolyForm b = (w.k() > 0) ? detail::d_any(detail::codiff_any(w)) : PolyForm(w.n(), w.k());
    return (a + b) * Rat(-1);
}

/// Euclidean Hodge star with the standard convention ** = (-1)^{k(n-k)}.
inline PolyForm hodge_star(const PolyForm& w) {
    const int n = w.n();
    PolyForm out(n, n - w.k());
    for (const auto& [idx, p] : w.components()) {
        std::vector<int> comp;
        comp.reserve(static_cast<std::size_t>(n - w.k()));
        std::size_t at = 0;
        for (int i = 0; i < n; ++i) {
            if (at < idx.size() && idx[at] == i) {
                ++at;
            } else {
                comp.push_back(i);
            }
        }
        // sign of the permutation (idx, comp) of (0..n-1): count inversions
        std::vector<int> perm = idx;
        perm.insert(perm.end(), comp.begin(), comp.end());
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
        out.add(comp, (inv % 2 == 0) ? p : -p);
    }
    return out;
}

/// Pointwise inner product of two k-forms in the coordinate frame.
inline Polynomial inner_product(const PolyForm& a, const PolyForm& b) {
    if (a.n() != b.n() || a.k() != b.k())
        throw domain_error("inner_product: mismatched dimension or degree");
    Polynomial acc(a.n());
    for (const auto& [idx, p] : a.components()) {
        auto it = b.components().find(idx);
        if (it != b.components().end()) acc = acc + p * it->second;
    }
    return acc;
}

inline PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.n() != b.n()) throw domain_error("wedge: mismatched dimension");
    if (a.k() + b.k() > a.n()) return PolyForm(a.n(), std::min(a.n(), a.k() + b.k()));
    PolyForm out(a.n(), a.k() + b.k());
    for (const auto& [ia, pa] : a.components())
        for (const auto& [ib, pb] : b.components()) {
            std::vector<int> idx = ia;
            idx.insert(idx.end(), ib.begin(), ib.end());
            auto sign = detail::sort_sign(idx);
            if (!sign) continue;
            Polynomial prod = pa * pb;
            out.add(idx, *sign > 0 ? prod : -prod);
        }
    return out;
}

struct FormClass {
    bool closed = false, coclosed = false, harmonic = false;
};

/// Exact predicates d w = 0, codiff w = 0, laplacian w = 0 (top and bottom
/// degrees close trivially on the missing side).
inline FormClass classify(const PolyForm& w) {
    FormClass c;
    c.closed = (w.k() >= w.n()) || detail::d_any(w).is_zero();
    c.coclosed = (w.k() <= 0) || detail::codiff_any(w).is_zero();
    c.harmonic = laplacian(w).is_zero();
    return c;
}

// ---------------------------------------------------------------------------
// Condition W
// ---------------------------------------------------------------------------

struct ConditionWReport {
    bool holds_at_all_samples = false;
    std::vector<Rat> worst_point;
    Rat lhs = 0, rhs = 0;           ///< the direct inequality at the worst point
    Rat star_lhs = 0, star_rhs = 0; ///< the star counterpart at the worst point
};

namespace detail {

// |<d(|W|^2) ^ W, dW>| <= 2 |W|^2 |dW|^2 at a point, compared through squares.
struct WSide {
    Polynomial pairing;  // <d(|W|^2) ^ W, dW>
    Polynomial bound;    // 2 |W|^2 |dW|^2
};

inline WSide w_side(const PolyForm& w) {
    WSide s;
    const Polynomial norm2 = inner_product(w, w);
    PolyForm dnorm(w.n(), 1);
    for (int i = 0; i < w.n(); ++i)
        dnorm.add({i}, norm2.partial(i));
    const PolyForm dW =
        (w.k() < w.n()) ? detail::d_any(w) : PolyForm(w.n(), std::min(w.n(), w.k() + 1));
    const PolyForm wedge_part = wedge(dnorm, w);
    if (wedge_part.k() == dW.k())
        s.pairing = inner_product(wedge_part, dW);
    else
        s.pairing = Polynomial(w.n());
    s.bound = inner_product(dW, dW) * norm2 * Rat(2);
    return s;
}

} // namespace detail

/// Exact sampled check of both Condition W inequalities, for the form and
/// its Hodge dual. Squares are compared so no square roots enter; this is a
/// pointwise check at the given rational points, not a global proof.
inline ConditionWReport condition_w_report(const PolyForm& w,
                                           const std::vector<std::vector<Rat>>& points) {
    if (points.empty()) throw domain_error("condition_w_report: need at least one sample point");
    const detail::WSide direct = detail::w_side(w);
    const detail::WSide dual = detail::w_side(hodge_star(w));

    ConditionWReport rep;
    rep.holds_at_all_samples = true;
    bool have_worst = false;
    Rat worst_gap = 0;
    for (const auto& x : points) {
        if (static_cast<int>(x.size()) != w.n())
            throw domain_error("condition_w_report: point dimension mismatch");
        const Rat l = direct.pairing.eval(x);
        const Rat r = direct.bound.eval(x);
        const Rat ls = dual.pairing.eval(x);
        const Rat rs = dual.bound.eval(x);
        const bool ok = (l * l <= r * r) && (ls * ls <= rs * rs);
        if (!ok) rep.holds_at_all_samples = false;
        // worst point: largest lhs^2 - rhs^2 over both inequalities
        const Rat gap = std::max(l * l - r * r, ls * ls - rs * rs);
        if (!have_worst || gap > worst_gap) {
            have_worst = true;
            worst_gap = gap;
            rep.worst_point = x;
            rep.lhs = l < 0 ? Rat(-l) : l;
            rep.rhs = r;
            rep.star_lhs = ls < 0 ? Rat(-ls) : ls;
            rep.star_rhs = rs;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Text syntax: "x1*x3 dx1^dx3 + 2 dx2"
// ---------------------------------------------------------------------------

namespace detail {

class FormParser {
public:
    FormParser(const std::string& src, int n, int max_degree)
        : s_(src), n_(n), max_degree_(max_degree) {}

    PolyForm parse() {
        PolyForm acc(n_, peek_degree());
        bool first = true;
        skip_ws();
        while (pos_ < s_.size()) {
            int sign = 1;
            if (!first) {
                if (s_[pos_] == '+') {
                    ++pos_;
                } else if (s_[pos_] == '-') {
                    sign = -1;
                    ++pos_;
                } else {
                    fail("expected '+' or '-' between terms");
                }
            } else if (s_[pos_] == '-') {
                sign = -1;
                ++pos_;
            }
            first = false;
            auto [coef, idx] = parse_term();
            if (coef.degree() > max_degree_) fail("polynomial degree cap exceeded");
            PolyForm t = PolyForm::term(n_, sign > 0 ? coef : -coef, idx);
            if (t.k() != acc.k()) fail("mixed form degrees in one expression");
            acc = acc + t;
            skip_ws();
        }
        return acc;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
    int n_;
    int max_degree_;

    [[noreturn]] void fail(const std::string& msg) {
        throw domain_error("form parse error at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool starts_dx() {
        return pos_ + 1 < s_.size() && s_[pos_] == 'd' && s_[pos_ + 1] == 'x';
    }

    int peek_degree() {
        // scan the first term's dx count to fix the degree of the accumulator
        std::size_t save = pos_;
        int k = 0;
        int depth = 0;
        while (save < s_.size()) {
            char c = s_[save];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && (c == '+' || (c == '-' && save > 0 && !is_term_start(save)))) break;
            if (c == 'd' && save + 1 < s_.size() && s_[save + 1] == 'x') {
                ++k;
                save += 2;
                while (save < s_.size() && std::isdigit(static_cast<unsigned char>(s_[save])))
                    ++save;
                continue;
            }
            ++save;
        }
        return k;
    }
    bool is_term_start(std::size_t at) {
        // a '-' at the very start (after ws) begins the first term
        for (std::size_t i = 0; i < at; ++i)
            if (!std::isspace(static_cast<unsigned char>(s_[i]))) return false;
        return true;
    }

    std::pair<Polynomial, std::vector<int>> parse_term() {
        skip_ws();
        Polynomial coef = Polynomial::constant(n_, 1);
        bool saw_coef = false;
        while (pos_ < s_.size() && !starts_dx()) {
            char c = s_[pos_];
            if (c == '+' || c == '-') break;
            if (c == '*') {
                ++pos_;
                skip_ws();
                continue;
            }
            coef = coef * parse_factor();
            saw_coef = true;
            skip_ws();
        }
        std::vector<int> idx;
        while (starts_dx()) {
            pos_ += 2;
            idx.push_back(parse_index());
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                skip_ws();
                if (!starts_dx()) fail("expected dx after '^'");
            } else {
                break;
            }
        }
        if (!saw_coef && idx.empty()) fail("empty term");
        return {coef, idx};
    }

    Polynomial parse_factor() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = parse_polyexpr();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return maybe_power(p);
        }
        if (c == 'x') {
            ++pos_;
            int i = parse_index();
            return maybe_power(Polynomial::variable(n_, i));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return maybe_power(Polynomial::constant(n_, parse_rational()));
        }
        fail("expected a factor");
    }

    Polynomial maybe_power(Polynomial p) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^' && !(pos_ + 1 < s_.size() && s_[pos_ + 1] == 'd')) {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (starts_dx()) { // it was a wedge, not a power
                pos_ = save;
                return p;
            }
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected integer exponent");
            int e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                e = e * 10 + (s_[pos_++] - '0');
            Polynomial acc = Polynomial::constant(n_, 1);
            for (int i = 0; i < e; ++i) acc = acc * p;
            return acc;
        }
        return p;
    }

    Polynomial parse_polyexpr() {
        Polynomial acc(n_);
        int sign = 1;
        bool first = true;
        for (;;) {
            skip_ws();
            if (!first) {
                if (pos_ < s_.size() && s_[pos_] == '+') {
                    sign = 1;
                    ++pos_;
                } else if (pos_ < s_.size() && s_[pos_] == '-') {
                    sign = -1;
                    ++pos_;
                } else {
                    break;
                }
            } else if (pos_ < s_.size() && s_[pos_] == '-') {
                sign = -1;
                ++pos_;
            }
            first = false;
            Polynomial term = Polynomial::constant(n_, 1);
            for (;;) {
                skip_ws();
                if (pos_ >= s_.size()) break;
                char c = s_[pos_];
                if (c == '*') {
                    ++pos_;
                    continue;
                }
                if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                    term = term * parse_factor();
                    continue;
                }
                break;
            }
            acc = acc + (sign > 0 ? term : -term);
        }
        return acc;
    }

    int parse_index() {
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected variable index");
        int i = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            i = i * 10 + (s_[pos_++] - '0');
        if (i < 1 || i > n_) fail("variable index out of range 1..n");
        return i - 1;
    }

    Rat parse_rational() {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::string frac;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                frac += s_[pos_++];
            Rat num(digits.empty() ? "0" : digits);
            Rat den = 1;
            for (char c : frac) {
                num = num * 10 + (c - '0');
                den *= 10;
            }
            return num / den;
        }
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::string den;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                den += s_[pos_++];
            if (den.empty()) fail("expected denominator");
            return Rat(digits) / Rat(den);
        }
        return Rat(digits);
    }
};

} // namespace detail

/// Parse the documented text syntax, e.g. "x1*x3 dx1^dx3 + 2 dx2".
/// n caps the variable count (indices are 1-based in the syntax).
inline PolyForm parse_form(const std::string& src, int n, int max_degree = 6) {
    if (n < 1 || n > PolyForm::kMaxVars)
        throw domain_error("parse_form: need 1 <= n <= 8");
    return detail::FormParser(src, n, max_degree).parse();
}

inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        Rat m = c;
        if (!first) {
            os << (m < 0 ? " - " : " + ");
            if (m < 0) m = -m;
        } else if (m < 0) {
            os << "-";
            m = -m;
        }
        first = false;
        bool printed = false;
        bool unit = (m == 1);
        if (!unit) {
            os << m;
            printed = true;
        }
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            if (printed) os << "*";
            os << "x" << (i + 1);
            if (k[i] > 1) os << "^" << k[i];
            printed = true;
        }
        if (!printed) os << m;
    }
    return os.str();
}

inline std::string to_string(const PolyForm& w) {
    if (w.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, p] : w.components()) {
        std::string ps = to_string(p);
        // hoist a leading minus into the joiner so the output stays parseable
        bool negated = false;
        if (!ps.empty() && ps[0] == '-' && ps.find(" + ") == std::string::npos &&
            ps.find(" - ") == std::string::npos) {
            negated = true;
            ps = ps.substr(1);
        }
        if (first) {
            if (negated) os << "-";
        } else {
            os << (negated ? " - " : " + ");
        }
        first = false;
        const bool needs_parens = ps.find(" + ") != std::string::npos ||
                                  ps.find(" - ") != std::string::npos;
        if (idx.empty()) {
            os << ps;
            continue;
        }
        if (ps != "1") os << (needs_parens ? "(" + ps + ")" : ps) << " ";
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) os << "^";
            os << "dx" << (idx[i] + 1);
        }
    }
    return os.str();
}

} // namespace rcg
