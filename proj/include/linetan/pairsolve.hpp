#pragma once

#include <variant>

#include "linetan/algreal.hpp"
#include "linetan/mpoly.hpp"

namespace linetan {

namespace detail {

// Arithmetic in Q[u]/(F) for a square-free modulus F. Inversion can discover
// a nontrivial factor of F; callers then split the modulus and retry on the
// pieces, which is exactly what the solver wants.
struct ModF {
    UPoly F;

    UPoly reduce(const UPoly& a) const { return UPoly::divrem(a, F).second; }
    UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }

    struct Split { UPoly factor; };  // nontrivial proper factor of F
    // Inverse of a mod F, or a proper factor when a is a zero divisor.
    // a ≡ 0 mod F is reported as Split{F} so callers can drop the term.
    std::variant<UPoly, Split> inv(const UPoly& a) const {
        auto [g, s, t] = UPoly::ext_gcd(reduce(a), F);
        if (g.degree() == 0) return reduce(Rat(1) / g.leading() * s);
        return Split{g.primitive()};
    }
};

// Polynomial in y with coefficients in Q[u]/(F), dense ascending.
using YPoly = std::vector<UPoly>;

inline void ytrim(const ModF& m, YPoly& p) {
    while (!p.empty() && m.reduce(p.back()).is_zero()) p.pop_back();
    for (auto& c : p) c = m.reduce(c);
}

struct GcdSplit { UPoly factor; };
struct GcdNonSeparating {};
// Monic gcd of A, B in (Q[u]/(F))[y] via Euclid with zero-divisor splitting.
using GcdResult = std::variant<YPoly, GcdSplit>;

inline GcdResult gcd_mod(const ModF& m, YPoly a, YPoly b) {
    ytrim(m, a);
    ytrim(m, b);
    while (!b.empty()) {
        auto invlc = m.inv(b.back());
        if (auto* sp = std::get_if<ModF::Split>(&invlc)) {
            if (sp->factor.degree() == m.F.degree()) {
                // Leading coefficient vanishes identically mod F: drop it.
                b.pop_back();
                ytrim(m, b);
                continue;
            }
            return GcdSplit{sp->factor};
        }
        const UPoly& ilc = std::get<UPoly>(invlc);
        if (a.size() < b.size()) { std::swap(a, b); continue; }
        // One pseudo-division step: a -= lc(a) * ilc * y^(da-db) * b.
        size_t shift = a.size() - b.size();
        UPoly f = m.mul(a.back(), ilc);
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] = m.reduce(a[i + shift] - f * b[i]);
        ytrim(m, a);
        std::swap(a, b);
    }
    if (a.empty()) return a;
    auto invlc = m.inv(a.back());
    if (auto* sp = std::get_if<ModF::Split>(&invlc)) return GcdSplit{sp->factor};
    const UPoly& ilc = std::get<UPoly>(invlc);
    for (auto& c : a) c = m.mul(c, ilc);
    return a;
}

// g(yrep(u)) mod F by Horner.
inline UPoly compose_mod(const ModF& m, const UPoly& g, const UPoly& yrep) {
    UPoly acc;
    for (int i = g.degree(); i >= 0; --i)
        acc = m.reduce(acc * yrep + UPoly::constant(g[i]));
    return acc;
}

}  // namespace detail

// One solution branch of a bivariate system: x and y are polynomial
// functions of a single algebraic number alpha (a root of `factor`).
struct PairSolution {
    AlgReal alpha;
    UPoly factor;  // square-free, irreducible over the kept decomposition not guaranteed
    UPoly xrep, yrep;
    int multiplicity = 1;

    // Exact sign of g(x, y) at this solution.
    int sign_at(const MPoly& g, const std::string& xname, const std::string& yname) const {
        detail::ModF m{factor};
        auto xcs = g.coeffs_in(xname);
        UPoly acc;
        for (size_t i = xcs.size(); i-- > 0;) {
            UPoly ci = detail::compose_mod(m, xcs[i].to_upoly(yname), yrep);
            acc = m.reduce(acc * xrep + ci);
        }
        return alpha.sign_at(acc);
    }

    AlgReal x_value() const { return eval_coord(xrep); }
    AlgReal y_value() const { return eval_coord(yrep); }

    // The coordinate h(alpha) as an algebraic number: isolate roots of its
    // minimal-ish polynomial Res_u(factor(u), t - h(u)) and pick by sign tests.
    AlgReal eval_coord(const UPoly& h) const {
        if (alpha.is_rational()) return AlgReal(h.eval(alpha.rational()));
        MPoly F = MPoly::from_upoly(factor, "_u");
        MPoly T = MPoly::variable("_t") - MPoly::from_upoly(h, "_u");
        UPoly elim = squarefree_part(resultant(F, T, "_u").to_upoly("_t"));
        auto ivs = isolate_real_roots(elim);
        // h(alpha) is among the roots; find it by comparing h(alpha) against
        // interval endpoints, refining alpha as needed.
        for (const auto& iv : ivs) {
            AlgReal cand = AlgReal::from_interval(elim, iv);
            // sign of h(alpha) - c for rational c is alpha.sign_at(h - c).
            auto above = [&](const Rat& c) { return alpha.sign_at(h - UPoly::constant(c)); };
            if (cand.is_rational()) {
                if (above(cand.rational()) == 0) return cand;
                continue;
            }
            if (above(cand.lower()) > 0 && above(cand.upper()) < 0) return cand;
        }
        throw std::logic_error("PairSolution::eval_coord: value not located");
    }
};

struct PairSolveResult {
    bool infinitely_many = false;
    std::vector<PairSolution> solutions;
    long complex_count = 0;  // roots of kept eliminant factors, with multiplicity
    UPoly eliminant;         // full resultant in the (possibly sheared) parameter
    std::vector<UPoly> rejected_factors;
    Rat shear{0};  // u = x + shear * y

    // Every kept eliminant factor with its coordinate functions, covering the
    // complex roots too (real roots are the `solutions` above).
    struct Branch {
        UPoly factor, xrep, yrep;
        int multiplicity = 1;
    };
    std::vector<Branch> branches;
};

// Solves {P = 0, Q = 0} for two polynomials in (xname, yname) with finitely
// many common complex roots (or detects an infinite family). Eliminates y by
// resultant after a shear u = x + s*y chosen so every branch has a single
// y per root of its eliminant factor; extraneous factors are removed by the
// exact gcd test, which is equivalent to back-substitution.
inline PairSolveResult pair_solve(const MPoly& P, const MPoly& Q,
                                  const std::string& xname, const std::string& yname) {
    static const Rat shears[] = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2),
                                 make_rat(1, 2), Rat(3), make_rat(-1, 2), Rat(5), Rat(7)};
    const MPoly U = MPoly::variable("_u");
    const MPoly Y = MPoly::variable(yname);
    for (const Rat& s : shears) {
        PairSolveResult res;
        res.shear = s;
        MPoly Pu = normalize_content(P.substitute(xname, U - s * Y));
        MPoly Qu = normalize_content(Q.substitute(xname, U - s * Y));
        MPoly R = resultant(Pu, Qu, yname);
        if (R.is_zero()) {
            res.infinitely_many = true;
            return res;
        }
        UPoly Ru = R.to_upoly("_u");
        res.eliminant = Ru;
        if (Ru.degree() == 0) return res;  // no solutions at all

        auto ycoeffs = [&](const MPoly& p, const detail::ModF& m) {
            auto cs = p.coeffs_in(yname);
            detail::YPoly out(cs.size());
            for (size_t i = 0; i < cs.size(); ++i) out[i] = m.reduce(cs[i].to_upoly("_u"));
            detail::ytrim(m, out);
            return out;
        };

        bool need_new_shear = false;
        for (const auto& [F0, mult] : squarefree_decompose(Ru)) {
            std::vector<UPoly> work{F0};
            while (!work.empty() && !need_new_shear) {
                UPoly F = std::move(work.back());
                work.pop_back();
                if (F.degree() == 0) continue;
                detail::ModF m{F};
                auto g = detail::gcd_mod(m, ycoeffs(Pu, m), ycoeffs(Qu, m));
                if (auto* sp = std::get_if<detail::GcdSplit>(&g)) {
                    work.push_back(sp->factor);
                    work.push_back(UPoly::exact_div(F, sp->factor).primitive());
                    continue;
                }
                auto& gv = std::get<detail::YPoly>(g);
                if (gv.empty()) {
                    // Both polynomials vanish identically mod F: a whole curve
                    // of solutions over this factor.
                    res.infinitely_many = true;
                    return res;
                }
                if (gv.size() == 1) {  // gcd = 1: extraneous resultant factor
                    res.rejected_factors.push_back(F);
                    continue;
                }
                UPoly yrep;
                if (gv.size() > 2) {
                    // A tangential intersection gives gcd (y - y0)^k, which no
                    // shear separates; accept exactly that shape, otherwise
                    // several distinct y sit over one u and a shear is needed.
                    int k = (int)gv.size() - 1;
                    UPoly b = m.reduce(make_rat(1, k) * gv[k - 1]);
                    bool power = true;
                    UPoly pw = UPoly::constant(Rat(1));  // b^(k-i) built downward
                    Rat binom(1);
                    for (int i = k; i >= 0 && power; --i) {
                        if (!m.reduce(gv[i] - binom * pw).is_zero()) power = false;
                        pw = m.mul(pw, b);
                        binom = binom * i / (k - i + 1);
                    }
                    if (!power) {
                        need_new_shear = true;
                        break;
                    }
                    yrep = m.reduce(-b);
                } else {
                    yrep = m.reduce(-gv[0]);  // monic linear gcd: y + gv[0]
                }
                UPoly xrep = m.reduce(UPoly::x() - s * yrep);
                res.complex_count += (long)F.degree() * mult;
                res.branches.push_back({F, xrep, yrep, mult});
                for (const auto& iv : isolate_real_roots(F)) {
                    PairSolution sol;
                    sol.alpha = AlgReal::from_interval(F, iv);
                    sol.factor = F;
                    sol.xrep = xrep;
                    sol.yrep = yrep;
                    sol.multiplicity = mult;
                    res.solutions.push_back(std::move(sol));
                }
            }
            if (need_new_shear) break;
        }
        if (need_new_shear) continue;
        // Sanity: every branch satisfies both inputs exactly.
        for (const auto& sol : res.solutions) {
            if (sol.sign_at(P, xname, yname) != 0 || sol.sign_at(Q, xname, yname) != 0)
                throw std::logic_error("pair_solve: back-substitution failed");
        }
        return res;
    }
    throw std::logic_error("pair_solve: no separating shear found");
}

}  // namespace linetan
