#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linetan/rat.hpp"

namespace linetan {

// Dense univariate polynomial over Rat. Coefficients in ascending degree,
// trailing zeros trimmed; the zero polynomial is the empty vector.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly constant(const Rat& a) { return UPoly(std::vector<Rat>{a}); }
    static UPoly x() { return UPoly({Rat(0), Rat(1)}); }
    // c0 + c1 x + c2 x^2 + ...
    static UPoly of(std::initializer_list<Rat> coeffs) {
        return UPoly(std::vector<Rat>(coeffs));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; }  // -1 for zero
    const Rat& operator[](int i) const { return c_[i]; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }

    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    UPoly operator-() const {
        std::vector<Rat> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return UPoly(std::move(r));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const Rat& s, const UPoly& a) {
        if (sgn(s) == 0) return UPoly();
        std::vector<Rat> r(a.c_.size());
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = s * a.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const Rat& s) { return s * a; }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    // Multiply by x^k.
    UPoly shifted(int k) const {
        if (is_zero()) return UPoly();
        std::vector<Rat> r(c_.size() + k, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return UPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<Rat> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat((long)i) * c_[i];
        return UPoly(std::move(r));
    }

    // Euclidean division over Q: a = q*b + r with deg r < deg b.
    static std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("UPoly::divrem: division by zero");
        std::vector<Rat> rem = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {UPoly(), a};
        std::vector<Rat> quot(a.degree() - db + 1, Rat(0));
        for (int i = a.degree(); i >= db; --i) {
            if (sgn(rem[i]) == 0) continue;
            Rat q = rem[i] / b.leading();
            quot[i - db] = q;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
        }
        return {UPoly(std::move(quot)), UPoly(std::move(rem))};
    }

    // Exact division; throws if the remainder is nonzero.
    static UPoly exact_div(const UPoly& a, const UPoly& b) {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) throw std::logic_error("UPoly::exact_div: not divisible");
        return q;
    }

    // Divides by numeric content and makes the leading coefficient positive.
    UPoly primitive() const {
        if (is_zero()) return UPoly();
        Int num_gcd(0), den_lcm(1);
        for (const auto& q : c_) {
            if (sgn(q) == 0) continue;
            num_gcd = ::gcd(num_gcd, q.get_num());
            den_lcm = ::lcm(den_lcm, q.get_den());
        }
        Rat scale = make_rat(den_lcm, num_gcd);
        if (sgn(leading()) < 0) scale = -scale;
        return scale * (*this);
    }

    // Divides by the positive numeric content, keeping the sign (primitive()
    // would flip it, which breaks Sturm sequences).
    UPoly normalized() const {
        if (is_zero()) return UPoly();
        UPoly p = primitive();
        return sgn(leading()) < 0 ? -p : p;
    }

    UPoly monic() const {
        if (is_zero()) return UPoly();
        return Rat(1) / leading() * (*this);
    }

    static UPoly gcd(const UPoly& a, const UPoly& b) {
        UPoly f = a.primitive(), g = b.primitive();
        while (!g.is_zero()) {
            UPoly r = divrem(f, g).second.primitive();
            f = std::move(g);
            g = std::move(r);
        }
        return f;
    }

    // Extended gcd: returns (g, s, t) with s*a + t*b = g, g = gcd normalized
    // primitive-positive.
    static std::tuple<UPoly, UPoly, UPoly> ext_gcd(const UPoly& a, const UPoly& b) {
        UPoly r0 = a, r1 = b;
        UPoly s0 = constant(Rat(1)), s1;
        UPoly t0, t1 = constant(Rat(1));
        while (!r1.is_zero()) {
            auto [q, r] = divrem(r0, r1);
            UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r);
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        UPoly g = r0.primitive();
        Rat factor = g.leading() / r0.leading();
        return {g, factor * s0, factor * t0};
    }

    // Substitute x -> inner(x).
    UPoly compose(const UPoly& inner) const {
        UPoly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * inner + constant(*it);
        return acc;
    }

    // Substitute x -> s*x (scales roots by 1/s).
    UPoly scale_var(const Rat& s) const {
        std::vector<Rat> r = c_;
        Rat p(1);
        for (size_t i = 1; i < r.size(); ++i) { p *= s; r[i] *= p; }
        return UPoly(std::move(r));
    }

    // x^deg * f(1/x).
    UPoly reversed() const {
        std::vector<Rat> r(c_.rbegin(), c_.rend());
        return UPoly(std::move(r));
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (sgn(c_[i]) == 0) continue;
            if (!out.empty()) out += sgn(c_[i]) > 0 ? " + " : " - ";
            else if (sgn(c_[i]) < 0) out += "-";
            Rat a = abs(c_[i]);
            bool unit = (a == 1) && i > 0;
            if (!unit) out += a.get_str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Yun's square-free decomposition: f ~ prod factor_i^mult_i with the factors
// pairwise coprime and square-free. Multiplicities ascendingly discovered.
inline std::vector<std::pair<UPoly, int>> squarefree_decompose(const UPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decompose: zero polynomial");
    std::vector<std::pair<UPoly, int>> out;
    if (f.degree() == 0) return out;
    UPoly fp = f.primitive();
    UPoly d = fp.derivative();
    UPoly a = UPoly::gcd(fp, d);
    UPoly b = UPoly::exact_div(fp, a);
    UPoly c = UPoly::exact_div(d, a);
    UPoly z = c - b.derivative();
    int mult = 1;
    while (!(b.degree() == 0)) {
        UPoly g = UPoly::gcd(b, z);
        if (g.degree() > 0) out.emplace_back(g.primitive(), mult);
        b = UPoly::exact_div(b, g);
        UPoly zq = UPoly::exact_div(z, g);
        z = zq - b.derivative();
        ++mult;
    }
    return out;
}

inline UPoly squarefree_part(const UPoly& f) {
    UPoly out = UPoly::constant(Rat(1));
    for (const auto& [fac, m] : squarefree_decompose(f)) out *= fac;
    return out;
}

// Sturm sequence of f (caller usually passes a square-free polynomial).
inline std::vector<UPoly> sturm_sequence(const UPoly& f) {
    std::vector<UPoly> seq;
    if (f.is_zero()) return seq;
    seq.push_back(f.normalized());
    if (f.degree() == 0) return seq;
    seq.push_back(f.derivative().normalized());
    while (seq.back().degree() > 0) {
        UPoly r = UPoly::divrem(seq[seq.size() - 2], seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back((-r).normalized());
    }
    return seq;
}

inline int sign_variations_at(const std::vector<UPoly>& seq, const Rat& x) {
    int var = 0, prev = 0;
    for (const auto& p : seq) {
        int s = sign(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

inline int sign_variations_at_inf(const std::vector<UPoly>& seq, int dir) {
    int var = 0, prev = 0;
    for (const auto& p : seq) {
        if (p.is_zero()) continue;
        int s = sign(p.leading());
        if (dir < 0 && p.degree() % 2 == 1) s = -s;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Number of distinct real roots in (a, b]; requires a < b.
inline int count_roots(const std::vector<UPoly>& seq, const Rat& a, const Rat& b) {
    return sign_variations_at(seq, a) - sign_variations_at(seq, b);
}

inline int count_real_roots(const UPoly& f) {
    auto sf = squarefree_part(f);
    auto seq = sturm_sequence(sf);
    return sign_variations_at_inf(seq, -1) - sign_variations_at_inf(seq, +1);
}

// Cauchy root bound: all real roots lie in (-B, B).
inline Rat cauchy_bound(const UPoly& f) {
    assert(!f.is_zero() && f.degree() >= 0);
    Rat m(0);
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rat(abs(f[i])));
    return Rat(1) + m / abs(f.leading());
}

struct RootInterval {
    Rat lo, hi;        // lo == hi encodes an exact rational root
    int multiplicity = 1;
    bool exact() const { return lo == hi; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat width() const { return hi - lo; }
};

namespace detail {
// Splits (lo, hi] with `count` roots of the square-free poly into isolating
// intervals. Endpoints are never roots except possibly hi, handled explicitly.
inline void isolate_rec(const UPoly& f, const std::vector<UPoly>& seq, const Rat& lo,
                        const Rat& hi, int count, std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        if (sign(f.eval(hi)) == 0) out.push_back({hi, hi, 1});
        else out.push_back({lo, hi, 1});
        return;
    }
    Rat mid = (lo + hi) / 2;
    // Nudge mid off a root so the two halves stay well-defined Sturm queries.
    while (sign(f.eval(mid)) == 0) mid = mid + (hi - mid) / 16;
    int left = count_roots(seq, lo, mid);
    isolate_rec(f, seq, lo, mid, left, out);
    isolate_rec(f, seq, mid, hi, count - left, out);
}
}  // namespace detail

// Shrinks an isolating interval of (square-free) f below the given width by
// bisection. The interval must isolate a single root.
inline RootInterval refine_root(const UPoly& f, RootInterval iv, const Rat& width) {
    if (iv.exact()) return iv;
    int slo = sign(f.eval(iv.lo));
    int shi = sign(f.eval(iv.hi));
    if (slo == 0) return {iv.lo, iv.lo, iv.multiplicity};
    if (shi == 0) return {iv.hi, iv.hi, iv.multiplicity};
    if (slo == shi) {
        // Cannot happen for a square-free isolator.
        throw std::logic_error("refine_root: interval does not bracket a sign change");
    }
    while (iv.width() > width) {
        Rat mid = iv.mid();
        int sm = sign(f.eval(mid));
        if (sm == 0) return {mid, mid, iv.multiplicity};
        if (sm == slo) iv.lo = mid;
        else iv.hi = mid;
    }
    return iv;
}

// Isolating intervals for the distinct real roots of f, sorted ascending,
// with exact multiplicities from the square-free decomposition.
inline std::vector<RootInterval> isolate_real_roots(const UPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
    std::vector<RootInterval> out;
    if (f.degree() == 0) return out;
    for (const auto& [fac, mult] : squarefree_decompose(f)) {
        auto seq = sturm_sequence(fac);
        Rat bound = cauchy_bound(fac);
        int total = count_roots(seq, -bound, bound);
        std::vector<RootInterval> part;
        detail::isolate_rec(fac, seq, -bound, bound, total, part);
        for (auto& iv : part) {
            iv.multiplicity = mult;
            out.push_back(iv);
        }
    }
    // Intervals from different square-free factors can overlap even though the
    // roots themselves are distinct; bisect until pairwise disjoint.
    auto sf = squarefree_decompose(f);
    auto factor_of = [&](size_t idx) -> const UPoly& {
        // Recover which factor produced out[idx] by membership test.
        for (const auto& [fac, m] : sf)
            if (m == out[idx].multiplicity &&
                ((out[idx].exact() && sign(fac.eval(out[idx].lo)) == 0) ||
                 (!out[idx].exact() && sign(fac.eval(out[idx].lo)) * sign(fac.eval(out[idx].hi)) < 0)))
                return fac;
        throw std::logic_error("isolate_real_roots: lost factor");
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = i + 1; j < out.size(); ++j) {
                bool overlap = !(out[i].hi < out[j].lo || out[j].hi < out[i].lo);
                if (!overlap) continue;
                out[i] = refine_root(factor_of(i), out[i], out[i].width() / 4);
                out[j] = refine_root(factor_of(j), out[j], out[j].width() / 4);
                changed = true;
            }
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo + a.hi < b.lo + b.hi; });
    return out;
}

// Lagrange interpolation through (x_i, y_i) with distinct x_i.
inline UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    assert(xs.size() == ys.size());
    // Newton form for O(n^2) with incremental updates.
    size_t n = xs.size();
    std::vector<Rat> coef(ys);
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    UPoly acc;
    for (size_t i = n; i-- > 0;) {
        acc = acc * (UPoly::x() - UPoly::constant(xs[i])) + UPoly::constant(coef[i]);
    }
    return acc;
}

}  // namespace linetan
