#pragma once

#include "linetan/linegeom.hpp"
#include "linetan/pairsolve.hpp"

namespace linetan {

namespace detail {

// 3-vectors of coordinate functions in Q[u]/(F).
using UVec3 = std::array<UPoly, 3>;

inline UVec3 uvec_const(const Vec3& v) {
    return {UPoly::constant(v.x), UPoly::constant(v.y), UPoly::constant(v.z)};
}
inline UVec3 uvec_add(const UVec3& a, const UVec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline UVec3 uvec_sub(const UVec3& a, const UVec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline UVec3 uvec_scale(const UPoly& s, const UVec3& a, const ModF& m) {
    return {m.mul(s, a[0]), m.mul(s, a[1]), m.mul(s, a[2])};
}
inline UPoly uvec_dot(const UVec3& a, const UVec3& b, const ModF& m) {
    return m.reduce(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]);
}
inline UVec3 uvec_cross(const UVec3& a, const UVec3& b, const ModF& m) {
    return {m.reduce(a[1] * b[2] - a[2] * b[1]),
            m.reduce(a[2] * b[0] - a[0] * b[2]),
            m.reduce(a[0] * b[1] - a[1] * b[0])};
}
inline bool uvec_zero(const UVec3& a, const ModF& m) {
    for (const auto& c : a)
        if (!m.reduce(c).is_zero()) return false;
    return true;
}

// Simple closed rational interval arithmetic for certified enclosures.
struct IRat {
    Rat lo, hi;
    IRat operator+(const IRat& o) const { return {lo + o.lo, hi + o.hi}; }
    IRat operator-(const IRat& o) const { return {lo - o.hi, hi - o.lo}; }
    IRat operator*(const IRat& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
};

inline IRat ieval(const MPoly& p, const IRat& a, const IRat& b) {
    // Horner in the first variable with interval coefficients.
    auto cs = p.coeffs_in("a");
    IRat acc{Rat(0), Rat(0)};
    for (size_t i = cs.size(); i-- > 0;) {
        UPoly cb = cs[i].to_upoly("b");
        IRat cc{Rat(0), Rat(0)};
        for (int j = cb.degree(); j >= 0; --j)
            cc = cc * b + IRat{cb[j], cb[j]};
        acc = acc * a + cc;
    }
    return acc;
}

}  // namespace detail

// Exact sign of p(alpha, beta) for a rational-coefficient polynomial in
// variables "a", "b" and two independently represented algebraic numbers.
// Works by eliminating both to a univariate R(z) vanishing at the value, then
// separating zero from the other roots of R by interval refinement.
inline int sign_of_biexpr(const MPoly& p, const AlgReal& alpha, const UPoly& falpha,
                          const AlgReal& beta, const UPoly& fbeta) {
    if (alpha.is_rational())
        return beta.sign_at(p.substitute("a", alpha.rational()).to_upoly("b"));
    if (beta.is_rational())
        return alpha.sign_at(p.substitute("b", beta.rational()).to_upoly("a"));
    // The eliminant below is expensive, so it is only computed once interval
    // refinement has failed to separate the value from zero a few times.
    bool have_elim = false, zero_is_root = false;
    Rat sep(0);
    int rounds = 0;
    Rat wa = (alpha.upper() - alpha.lower()) / 2;
    Rat wb = (beta.upper() - beta.lower()) / 2;
    while (true) {
        detail::IRat ia{alpha.lower(), alpha.upper()};
        detail::IRat ib{beta.lower(), beta.upper()};
        detail::IRat val = detail::ieval(p, ia, ib);
        if (!val.contains_zero()) return sgn(val.lo) > 0 ? 1 : -1;
        if (!have_elim && ++rounds >= 3) {
            MPoly Fa = MPoly::from_upoly(falpha, "a");
            MPoly Fb = MPoly::from_upoly(fbeta, "b");
            MPoly z = MPoly::variable("_z");
            MPoly inner = resultant(Fb, z - p, "b");
            UPoly R = resultant(Fa, inner, "a").to_upoly("_z");
            if (R.is_zero()) throw std::logic_error("sign_of_biexpr: degenerate eliminant");
            zero_is_root = sgn(R.eval(Rat(0))) == 0;
            if (zero_is_root) {
                // Separation: smallest nonzero-root magnitude bound.
                UPoly Rs = squarefree_part(R);
                // Strip the factor z^k.
                while (sgn(Rs[0]) == 0) {
                    std::vector<Rat> c(Rs.coeffs().begin() + 1, Rs.coeffs().end());
                    Rs = UPoly(std::move(c));
                }
                if (Rs.degree() == 0) return 0;  // identically a zero root
                // Nonzero roots w of Rs satisfy |w| > |c0| / (|c0| + max|ci|).
                Rat mx(0);
                for (const auto& c : Rs.coeffs()) mx = std::max(mx, rat_abs(c));
                sep = rat_abs(Rs[0]) / (rat_abs(Rs[0]) + mx);
            }
            have_elim = true;
        }
        if (have_elim && zero_is_root && val.hi - val.lo < sep && val.hi < sep &&
            -val.lo < sep)
            return 0;  // enclosed strictly inside the zero-free gap around 0
        wa /= 16; wb /= 16;
        alpha.refine_below(wa);
        beta.refine_below(wb);
        if (alpha.is_rational() || beta.is_rational())
            return sign_of_biexpr(p, alpha, falpha, beta, fbeta);
    }
}

// Minimal polynomial of w(alpha) over Q for any root alpha of F: the first
// linear dependency among the powers of w in Q[a]/(F). For reducible F this
// is the minimal polynomial of the multiplication operator, which still
// vanishes at w(alpha) — all that root location needs.
inline UPoly minpoly_mod(const UPoly& w, const UPoly& F) {
    int d = F.degree();
    detail::ModF m{F};
    std::vector<std::vector<Rat>> pw;
    UPoly cur = UPoly::constant(Rat(1));
    for (int k = 0;; ++k) {
        std::vector<Rat> col(d, Rat(0));
        for (int i = 0; i <= cur.degree(); ++i) col[(size_t)i] = cur[i];
        if (k >= 1) {
            Mat A(d, k);
            for (int c = 0; c < k; ++c)
                for (int r = 0; r < d; ++r) A(r, c) = pw[c][(size_t)r];
            if (auto x = A.solve(col)) {
                std::vector<Rat> cs(k + 1);
                for (int i = 0; i < k; ++i) cs[(size_t)i] = -(*x)[(size_t)i];
                cs[(size_t)k] = Rat(1);
                return UPoly(std::move(cs));
            }
        }
        pw.push_back(col);
        cur = m.mul(cur, w);
    }
}

// num(alpha) / den(alpha) as an algebraic number (den(alpha) != 0), locating
// the value among the roots of the ratio's minimal polynomial by exact sign
// tests against rational endpoints.
inline AlgReal alg_ratio(UPoly num, UPoly den, AlgReal alpha, UPoly F) {
    while (true) {
        if (alpha.is_rational()) {
            Rat r = alpha.rational();
            return AlgReal(num.eval(r) / den.eval(r));
        }
        detail::ModF m{F};
        num = m.reduce(num);
        den = m.reduce(den);
        auto r = m.inv(den);
        if (auto* sp = std::get_if<detail::ModF::Split>(&r)) {
            // den is a zero divisor: shrink F to the factor carrying alpha.
            UPoly h = sp->factor;
            auto seq = sturm_sequence(h);
            UPoly keep = count_roots(seq, alpha.lower(), alpha.upper()) == 1
                             ? h
                             : UPoly::exact_div(F, h).primitive();
            F = keep;
            alpha = AlgReal::from_interval(F, RootInterval{alpha.lower(), alpha.upper(), 1});
            continue;
        }
        UPoly w = m.mul(num, std::get<UPoly>(r));
        UPoly mp = squarefree_part(minpoly_mod(w, F));
        int sden = alpha.sign_at(den);
        auto diff_sign = [&](const Rat& c) { return alpha.sign_at(num - c * den) * sden; };
        for (const auto& iv : isolate_real_roots(mp)) {
            AlgReal cand = AlgReal::from_interval(mp, iv);
            if (cand.is_rational()) {
                if (diff_sign(cand.rational()) == 0) return cand;
                continue;
            }
            if (diff_sign(cand.lower()) > 0 && diff_sign(cand.upper()) < 0) return cand;
        }
        throw std::logic_error("alg_ratio: value not located");
    }
}

// Proportionality of two Plücker coordinate vectors whose entries are
// polynomial functions of independent algebraic numbers: vanishing patterns
// agree and the coordinate ratios against a pivot agree as exact values.
inline bool pluecker_proportional_mod(const std::array<UPoly, 6>& f, const AlgReal& alpha,
                                      const UPoly& falpha, const std::array<UPoly, 6>& g,
                                      const AlgReal& beta, const UPoly& fbeta) {
    // Coordinate vanishing patterns must agree; a coordinate nonzero on both
    // sides then serves as pivot, and five minors against it decide rank 1.
    int pivot = -1;
    for (int i = 0; i < 6; ++i) {
        bool fz = alpha.sign_at(f[i]) == 0;
        bool gz = beta.sign_at(g[i]) == 0;
        if (fz != gz) return false;
        if (!fz && pivot < 0) pivot = i;
    }
    if (pivot < 0) return true;  // both vectors identically zero
    for (int j = 0; j < 6; ++j) {
        if (j == pivot) continue;
        AlgReal lam = alg_ratio(f[j], f[pivot], alpha, falpha);
        AlgReal mu = alg_ratio(g[j], g[pivot], beta, fbeta);
        if (!(lam == mu)) return false;
    }
    return true;
}

// A line whose base point and direction are polynomial functions of a single
// algebraic number alpha (a root of `modulus`). Rational lines use
// modulus = x with alpha = 0 so every code path is uniform.
struct AlgLine {
    UPoly modulus;
    AlgReal alpha;
    detail::UVec3 base, dir;
    int multiplicity = 1;

    static AlgLine from_rational(const LineR3& l, int mult = 1) {
        AlgLine a;
        a.modulus = UPoly::x();
        a.alpha = AlgReal(Rat(0));
        a.base = detail::uvec_const(l.base);
        a.dir = detail::uvec_const(l.direction);
        a.multiplicity = mult;
        return a;
    }

    bool exact() const { return alpha.is_rational(); }

    detail::ModF ctx() const { return detail::ModF{modulus}; }

    int sign_at(const UPoly& expr) const { return alpha.sign_at(expr); }

    LineR3 to_rational() const {
        if (!exact()) throw std::logic_error("AlgLine::to_rational: irrational line");
        const Rat& a = alpha.rational();
        return LineR3({base[0].eval(a), base[1].eval(a), base[2].eval(a)},
                      {dir[0].eval(a), dir[1].eval(a), dir[2].eval(a)});
    }

    // Plücker coordinate functions in the (p01..p03, p12, p13, p23) order used
    // by linegeom (direction part then moment part).
    std::array<UPoly, 6> pluecker_fns() const {
        auto m = ctx();
        auto mom = detail::uvec_cross(base, dir, m);
        return {m.reduce(dir[0]), m.reduce(dir[1]), m.reduce(dir[2]),
                mom[2], -mom[1], mom[0]};
    }

    // Exact sign of the tangency form against a rational sphere.
    int tangency_sign(const Sphere& s) const {
        auto m = ctx();
        auto w = detail::uvec_cross(detail::uvec_sub(detail::uvec_const(s.center), base),
                                    dir, m);
        UPoly expr = m.reduce(detail::uvec_dot(w, w, m) -
                              UPoly::constant(s.radius_squared) *
                                  detail::uvec_dot(dir, dir, m));
        return sign_at(expr);
    }

    // Exact sign of the incidence form against a rational line.
    int incidence_sign(const LineR3& l) const {
        auto q = to_pluecker(l);
        auto f = pluecker_fns();
        auto m = ctx();
        UPoly expr = m.reduce(f[0] * q.p[5] - f[1] * q.p[4] + f[2] * q.p[3] +
                              f[3] * q.p[2] - f[4] * q.p[1] + f[5] * q.p[0]);
        return sign_at(expr);
    }

    // Exact line equality across independent algebraic parametrizations:
    // all 2x2 minors of the two Plücker vectors vanish.
    bool same_line_as(const AlgLine& o) const {
        if (exact() && o.exact()) return same_line(to_rational(), o.to_rational());
        return pluecker_proportional_mod(pluecker_fns(), alpha, modulus,
                                         o.pluecker_fns(), o.alpha, o.modulus);
    }

    // Decimal-grade approximations (after refining alpha below eps).
    Vec3 approx_dir(const Rat& eps) const {
        alpha.refine_below(eps);
        Rat a = alpha.approx();
        return {dir[0].eval(a), dir[1].eval(a), dir[2].eval(a)};
    }
    Vec3 approx_base(const Rat& eps) const {
        alpha.refine_below(eps);
        Rat a = alpha.approx();
        return {base[0].eval(a), base[1].eval(a), base[2].eval(a)};
    }
};

}  // namespace linetan
