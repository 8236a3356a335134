#pragma once

#include <map>

#include "linetan/solver_base.hpp"

namespace linetan {

namespace detail {

// Evaluate a multivariate polynomial at coordinate functions in Q[u]/(F).
inline UPoly mpoly_eval_mod(const MPoly& p, const std::map<std::string, UPoly>& vals,
                            const ModF& m) {
    UPoly acc;
    const auto& vars = p.variables();
    for (const auto& [e, c] : p.terms()) {
        UPoly term = UPoly::constant(c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto it = vals.find(vars[i]);
            if (it == vals.end()) throw std::logic_error("mpoly_eval_mod: unbound variable");
            for (int j = 0; j < e[i]; ++j) term = m.mul(term, it->second);
        }
        acc = m.reduce(acc + term);
    }
    return acc;
}

// Inverse of g modulo F where F is the (square-free) modulus of alpha. When g
// is a zero divisor, F is shrunk to the divisor that still has alpha as a root
// until g is either invertible or identically zero (then nullopt). The caller
// must re-reduce its own data against the refined F.
inline std::optional<UPoly> invert_or_split(UPoly& F, AlgReal& alpha, UPoly g) {
    while (true) {
        ModF m{F};
        g = m.reduce(g);
        if (g.is_zero()) return std::nullopt;
        auto r = m.inv(g);
        if (std::holds_alternative<UPoly>(r)) return std::get<UPoly>(r);
        UPoly h = std::get<ModF::Split>(r).factor;
        if (h.degree() >= F.degree()) return std::nullopt;  // g ≡ 0 mod F
        auto seq = sturm_sequence(h);
        UPoly keep = count_roots(seq, alpha.lower(), alpha.upper()) == 1
                         ? h
                         : UPoly::exact_div(F, h).primitive();
        F = keep;
        alpha = AlgReal::from_interval(F, RootInterval{alpha.lower(), alpha.upper(), 1});
    }
}

// Chart transforms for the direction plane: v = (x, y, s*x + t*y + 1). The
// third row is varied until no solution of the system lies on the chart's
// line at infinity.
struct DirChart {
    long s = 0, t = 0;

    MPoly affine(const MPoly& p) const {
        MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
        MPoly v3 = MPoly::constant(Rat(s)) * x + MPoly::constant(Rat(t)) * y +
                   MPoly::constant(Rat(1));
        return p.substitute("v1", x).substitute("v2", y).substitute("v3", v3);
    }
    // Restriction of a homogeneous form to the chart's line at infinity,
    // dehomogenized at y = 1, plus its value at the direction (1, 0).
    std::pair<UPoly, Rat> at_infinity(const MPoly& p) const {
        MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
        MPoly v3 = MPoly::constant(Rat(s)) * x + MPoly::constant(Rat(t)) * y;
        MPoly f = p.substitute("v1", x).substitute("v2", y).substitute("v3", v3);
        UPoly bx = f.substitute("y", MPoly::constant(Rat(1))).to_upoly("x");
        MPoly a10 = f.substitute("y", MPoly::constant(Rat(0)))
                        .substitute("x", MPoly::constant(Rat(1)));
        Rat c = a10.is_zero() ? Rat(0) : a10.terms().begin()->second;
        return {bx, c};
    }
    // Direction coordinate functions for a chart solution (xr, yr) mod F.
    std::array<UPoly, 3> dir_fns(const UPoly& xr, const UPoly& yr, const ModF& m) const {
        return {m.reduce(xr), m.reduce(yr),
                m.reduce(Rat(s) * xr + Rat(t) * yr + UPoly::constant(Rat(1)))};
    }
    Vec3 dir_at(const Rat& x0, const Rat& y0) const {
        return {x0, y0, Rat(s) * x0 + Rat(t) * y0 + 1};
    }
};

inline std::vector<DirChart> dir_charts() {
    std::vector<DirChart> out;
    for (long s = 0; s <= 13; ++s) out.push_back({s, 0});
    for (long t = 1; t <= 13; ++t) out.push_back({0, t});
    for (long t = 1; t <= 13; ++t) out.push_back({1, t});
    return out;
}

// True when the pair of homogeneous forms has no common projective zero on
// the chart's line at infinity.
inline bool infinity_clear(const MPoly& p, const MPoly& q, const DirChart& ch) {
    auto [bp, cp] = ch.at_infinity(p);
    auto [bq, cq] = ch.at_infinity(q);
    if (bp.is_zero() && sgn(cp) == 0) return false;
    if (bq.is_zero() && sgn(cq) == 0) return false;
    if (sgn(cp) == 0 && sgn(cq) == 0) return false;  // common zero at (1, 0)
    if (!bp.is_zero() && !bq.is_zero() && UPoly::gcd(bp, bq).degree() > 0) return false;
    return true;
}

// Common projective zeros of two homogeneous forms in v1, v2, v3, solved in
// an affine chart that provably misses no solution. Branches carry coordinate
// functions for all complex zeros; real zeros are listed separately.
struct P2Solve {
    bool infinitely_many = false;
    long complex_count = 0;
    struct Branch {
        UPoly factor;
        std::array<UPoly, 3> coords;
        int multiplicity = 1;
    };
    std::vector<Branch> branches;
    struct RealZero {
        UPoly factor;
        AlgReal alpha;
        std::array<UPoly, 3> coords;
        int multiplicity = 1;
    };
    std::vector<RealZero> reals;
};

inline P2Solve solve_homogeneous_pair_p2(const MPoly& A, const MPoly& B) {
    for (const auto& ch : dir_charts()) {
        if (!infinity_clear(A, B, ch)) continue;
        PairSolveResult ps;
        try {
            ps = pair_solve(ch.affine(A), ch.affine(B), "x", "y");
        } catch (const std::logic_error&) {
            continue;
        }
        P2Solve out;
        if (ps.infinitely_many) {
            out.infinitely_many = true;
            return out;
        }
        out.complex_count = ps.complex_count;
        for (const auto& br : ps.branches) {
            ModF m{br.factor};
            out.branches.push_back(
                {br.factor, ch.dir_fns(br.xrep, br.yrep, m), br.multiplicity});
        }
        for (const auto& sol : ps.solutions) {
            ModF m{sol.factor};
            out.reals.push_back({sol.factor, sol.alpha,
                                 ch.dir_fns(sol.xrep, sol.yrep, m), sol.multiplicity});
        }
        return out;
    }
    throw NonGenericError("no chart separates the projective pair");
}

// Common zeros of three polynomials in three variables, assuming finitely
// many. A and B drive the elimination (resultants over zn, then a bivariate
// solve, then recovery of zn per branch); C is verified exactly on every
// branch, splitting branch moduli where it vanishes only partially. The
// complex count covers certified branches only, so spurious resultant
// intersections never inflate it.
struct TripleSolve {
    bool infinitely_many = false;
    long complex_count = 0;
    struct Sol {
        UPoly factor;
        AlgReal alpha;
        UPoly x, y, z;  // coordinate functions of alpha
        int multiplicity = 1;
    };
    std::vector<Sol> sols;
};

// Variant with caller-supplied zn-eliminants (for systems where the raw
// resultants carry a known shared factor that must be divided out first).
// R1, R2 must vanish at the (xn, yn) projection of every common zero.
inline TripleSolve solve_triple_given(const MPoly& A, const MPoly& B, const MPoly& C,
                                      const MPoly& R1, const MPoly& R2,
                                      const std::string& xn, const std::string& yn,
                                      const std::string& zn) {
    TripleSolve out;
    if (R1.is_zero() || R2.is_zero()) {
        out.infinitely_many = true;
        return out;
    }
    auto ps = pair_solve(R1, R2, xn, yn);
    if (ps.infinitely_many) {
        out.infinitely_many = true;
        return out;
    }
    auto acs = A.coeffs_in(zn);
    auto bcs = B.coeffs_in(zn);
    auto ccs = C.coeffs_in(zn);
    auto zpoly = [&](const std::vector<MPoly>& cs, const UPoly& xr, const UPoly& yr,
                     const ModF& m) {
        YPoly out_(cs.size());
        for (size_t i = 0; i < cs.size(); ++i)
            out_[i] = mpoly_eval_mod(cs[i], {{xn, xr}, {yn, yr}}, m);
        ytrim(m, out_);
        return out_;
    };
    for (const auto& br : ps.branches) {
        // Recover zn over each sub-factor of the branch modulus.
        std::vector<std::array<UPoly, 3>> work{{br.factor, br.xrep, br.yrep}};
        while (!work.empty()) {
            auto [F, xr, yr] = work.back();
            work.pop_back();
            if (F.degree() == 0) continue;
            ModF m{F};
            xr = m.reduce(xr);
            yr = m.reduce(yr);
            auto g = gcd_mod(m, zpoly(acs, xr, yr, m), zpoly(bcs, xr, yr, m));
            if (auto* sp = std::get_if<GcdSplit>(&g)) {
                work.push_back({sp->factor, xr, yr});
                work.push_back({UPoly::exact_div(F, sp->factor).primitive(), xr, yr});
                continue;
            }
            auto& gv = std::get<YPoly>(g);
            if (gv.size() <= 1) continue;  // no common zn: spurious branch
            // Solve the modulus together with the zn-gcd as a bivariate
            // system in (u, zn); certify C on each resulting sub-branch.
            MPoly Fm = MPoly::from_upoly(F, "_w");
            MPoly G, Z = MPoly::variable(zn), zp = MPoly::constant(Rat(1));
            for (size_t i = 0; i < gv.size(); ++i) {
                G = G + MPoly::from_upoly(gv[i], "_w") * zp;
                zp = zp * Z;
            }
            auto qs = pair_solve(Fm, G, "_w", zn);
            if (qs.infinitely_many) {
                out.infinitely_many = true;
                return out;
            }
            auto cz = zpoly(ccs, xr, yr, m);
            for (const auto& qb : qs.branches) {
                ModF m2{qb.factor};
                // C evaluated on the sub-branch, as a function of its root.
                UPoly acc;
                for (size_t i = cz.size(); i-- > 0;)
                    acc = m2.reduce(acc * qb.yrep + compose_mod(m2, cz[i], qb.xrep));
                UPoly keep = qb.factor;
                if (!acc.is_zero()) {
                    keep = UPoly::gcd(acc, qb.factor);
                    if (keep.degree() == 0) continue;
                }
                ModF mk{keep};
                int mult = br.multiplicity * qb.multiplicity;
                out.complex_count += (long)keep.degree() * mult;
                auto seq = keep.degree() == qb.factor.degree()
                               ? std::vector<RootInterval>{}
                               : isolate_real_roots(keep);
                for (const auto& sol : qs.solutions) {
                    if (!(sol.factor == qb.factor) || !(sol.yrep == qb.yrep)) continue;
                    AlgReal alpha = sol.alpha;
                    if (keep.degree() != qb.factor.degree()) {
                        auto sseq = sturm_sequence(keep);
                        if (count_roots(sseq, alpha.lower(), alpha.upper()) != 1) continue;
                        alpha = AlgReal::from_interval(
                            keep, RootInterval{alpha.lower(), alpha.upper(), 1});
                    }
                    TripleSolve::Sol s;
                    s.factor = keep;
                    s.alpha = alpha;
                    s.x = mk.reduce(compose_mod(mk, xr, mk.reduce(sol.xrep)));
                    s.y = mk.reduce(compose_mod(mk, yr, mk.reduce(sol.xrep)));
                    s.z = mk.reduce(sol.yrep);
                    s.multiplicity = mult;
                    out.sols.push_back(std::move(s));
                }
            }
        }
    }
    return out;
}

inline TripleSolve solve_triple(const MPoly& A, const MPoly& B, const MPoly& C,
                                const std::string& xn, const std::string& yn,
                                const std::string& zn) {
    return solve_triple_given(A, B, C, resultant(A, B, zn), resultant(A, C, zn),
                              xn, yn, zn);
}

}  // namespace detail

// Homogeneous conditions on the tangent direction v for a line tangent to
// four spheres with affinely independent centers. With d_i = c_i - c4 and
// N_i(v) = v^2 (d_i^2 + r4^2 - r_i^2) - (d_i . v)^2, the perpendicular foot
// q = p - c4 from c4 satisfies M q = N / (2 v^2), q . v = 0, q^2 = r4^2,
// which eliminates to a cubic and a quartic in v alone.
struct DirectionSystem {
    MPoly cubic, quartic;      // in v1, v2, v3
    std::array<MPoly, 3> W;    // adj(M) N; q = W / (2 det(M) v^2)
    Vec3 d1, d2, d3;
    Rat detM;
    Point3 c4;
    Rat r4sq;
};

inline DirectionSystem direction_system(const std::vector<Sphere>& s) {
    if (s.size() != 4) throw std::invalid_argument("direction_system: need 4 spheres");
    DirectionSystem ds;
    ds.c4 = s[3].center;
    ds.r4sq = s[3].radius_squared;
    ds.d1 = s[0].center - ds.c4;
    ds.d2 = s[1].center - ds.c4;
    ds.d3 = s[2].center - ds.c4;
    Mat3 M = {ds.d1, ds.d2, ds.d3};
    ds.detM = det3(M);
    if (sgn(ds.detM) == 0)
        throw std::invalid_argument("direction_system: affinely dependent centers");
    Mat3 adjM = adjugate3(M);

    MPoly v[3] = {MPoly::variable("v1"), MPoly::variable("v2"), MPoly::variable("v3")};
    MPoly vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    const Vec3* d[3] = {&ds.d1, &ds.d2, &ds.d3};
    std::array<MPoly, 3> N;
    for (int i = 0; i < 3; ++i) {
        MPoly dv = MPoly::constant((*d[i]).x) * v[0] + MPoly::constant((*d[i]).y) * v[1] +
                   MPoly::constant((*d[i]).z) * v[2];
        Rat k = norm2(*d[i]) + ds.r4sq - s[i].radius_squared;
        N[i] = MPoly::constant(k) * vv - dv * dv;
    }
    for (int i = 0; i < 3; ++i) {
        ds.W[i] = MPoly::constant(Rat(0));
        for (int j = 0; j < 3; ++j) ds.W[i] = ds.W[i] + MPoly::constant(adjM[i][j]) * N[j];
    }
    ds.cubic = v[0] * ds.W[0] + v[1] * ds.W[1] + v[2] * ds.W[2];
    MPoly WW = ds.W[0] * ds.W[0] + ds.W[1] * ds.W[1] + ds.W[2] * ds.W[2];
    ds.quartic = WW - MPoly::constant(4 * ds.detM * ds.detM * ds.r4sq) * vv * vv;
    return ds;
}

inline SolveReport tangents_spheres_coplanar(const std::vector<Sphere>& spheres);

// Lines tangent to four spheres. Dispatches on the affine rank of the centers.
inline SolveReport tangents_four_spheres(const std::vector<Sphere>& spheres) {
    if (spheres.size() != 4) throw std::invalid_argument("tangents_four_spheres: need 4 spheres");
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j)
            if (spheres[i].center == spheres[j].center &&
                spheres[i].radius_squared == spheres[j].radius_squared)
                throw DuplicateSphereError();
    {
        Mat3 M = {spheres[0].center - spheres[3].center,
                  spheres[1].center - spheres[3].center,
                  spheres[2].center - spheres[3].center};
        if (sgn(det3(M)) == 0) return tangents_spheres_coplanar(spheres);
    }
    DirectionSystem ds = direction_system(spheres);
    Rat scale = 2 * ds.detM;

    for (const auto& ch : detail::dir_charts()) {
        if (!detail::infinity_clear(ds.cubic, ds.quartic, ch)) continue;
        MPoly P = ch.affine(ds.cubic), Q = ch.affine(ds.quartic);
        auto pr = pair_solve(P, Q, "x", "y");
        SolveReport rep;
        if (pr.infinitely_many) {
            rep.infinitely_many = true;
            rep.degenerate_family = "tangent directions form a curve";
            rep.finalize(4);
            return rep;
        }
        rep.complex_count_with_multiplicity = (int)pr.complex_count;
        bool ok = true;
        for (const auto& ps : pr.solutions) {
            if (ps.alpha.is_rational()) {
                Rat x0 = ps.xrep.eval(ps.alpha.rational());
                Rat y0 = ps.yrep.eval(ps.alpha.rational());
                Vec3 v = ch.dir_at(x0, y0);
                Rat vv = norm2(v);
                std::map<std::string, Rat> at{{"v1", v.x}, {"v2", v.y}, {"v3", v.z}};
                Point3 base = ds.c4;
                for (int i = 0; i < 3; ++i)
                    base[i] += ds.W[i].eval(at) / (scale * vv);
                LineR3 line(base, v);
                for (const auto& s : spheres)
                    if (sgn(tangency_form_affine(line, s)) != 0) { ok = false; break; }
                if (!ok) break;
                rep.solutions.push_back(AlgLine::from_rational(line, ps.multiplicity));
            } else {
                UPoly F = ps.factor;
                AlgReal a = ps.alpha;
                detail::ModF m0{F};
                auto v = ch.dir_fns(ps.xrep, ps.yrep, m0);
                UPoly vv = m0.reduce(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                auto inv = detail::invert_or_split(F, a, scale * vv);
                if (!inv) { ok = false; break; }  // real direction cannot be isotropic
                detail::ModF m{F};
                v = ch.dir_fns(ps.xrep, ps.yrep, m);
                std::map<std::string, UPoly> at{{"v1", v[0]}, {"v2", v[1]}, {"v3", v[2]}};
                AlgLine sol;
                sol.modulus = F;
                sol.alpha = a;
                sol.dir = {v[0], v[1], v[2]};
                for (int i = 0; i < 3; ++i)
                    sol.base[i] = m.reduce(UPoly::constant(ds.c4[i]) +
                                           m.mul(detail::mpoly_eval_mod(ds.W[i], at, m), *inv));
                sol.multiplicity = ps.multiplicity;
                if (sol.sign_at(detail::uvec_dot(sol.dir, sol.dir, m)) <= 0) { ok = false; break; }
                for (const auto& s : spheres)
                    if (sol.tangency_sign(s) != 0) { ok = false; break; }
                if (!ok) break;
                rep.solutions.push_back(std::move(sol));
            }
        }
        if (!ok) continue;  // chart hit a degenerate construction; try another
        rep.finalize(4);
        return rep;
    }
    throw NonGenericError("tangents_four_spheres: no usable direction chart");
}

// Four spheres with coplanar (but not collinear) centers. With d3 in the span
// of d1, d2, the rank-2 system leaves a compatibility conic E1 on v, and the
// radius condition becomes a degree-6 form E2; directions parallel to the
// center plane are handled by a separate lift with a mirror pair of lines.
inline SolveReport tangents_spheres_coplanar(const std::vector<Sphere>& spheres) {
    // Reorder the first three spheres so d1, d2 are independent.
    std::vector<Sphere> s = spheres;
    if (cross(s[0].center - s[3].center, s[1].center - s[3].center).is_zero()) {
        std::swap(s[1], s[2]);
        if (cross(s[0].center - s[3].center, s[1].center - s[3].center).is_zero()) {
            std::swap(s[0], s[2]);
            if (cross(s[0].center - s[3].center, s[1].center - s[3].center).is_zero())
                throw DegenerateCentersError("collinear sphere centers");
        }
    }
    Point3 c4 = s[3].center;
    Rat r4sq = s[3].radius_squared;
    Vec3 d1 = s[0].center - c4, d2 = s[1].center - c4, d3 = s[2].center - c4;
    Vec3 n = cross(d1, d2);
    // d3 = l1 d1 + l2 d2.
    Mat lam(3, 2);
    std::vector<Rat> rhs(3);
    for (int i = 0; i < 3; ++i) {
        lam(i, 0) = d1[i];
        lam(i, 1) = d2[i];
        rhs[i] = d3[i];
    }
    auto lsol = lam.solve(rhs);
    if (!lsol) throw std::logic_error("tangents_spheres_coplanar: centers not coplanar");
    Rat l1 = (*lsol)[0], l2 = (*lsol)[1];

    // B = inverse of the rows (d1, d2, n); columns B1, B2, B3 with B3 = n/|n|^2.
    Mat3 A = {d1, d2, n};
    Rat detA = det3(A);
    Mat3 adjA = adjugate3(A);
    Vec3 B1{adjA[0][0] / detA, adjA[1][0] / detA, adjA[2][0] / detA};
    Vec3 B2{adjA[0][1] / detA, adjA[1][1] / detA, adjA[2][1] / detA};
    Vec3 B3{adjA[0][2] / detA, adjA[1][2] / detA, adjA[2][2] / detA};

    MPoly v[3] = {MPoly::variable("v1"), MPoly::variable("v2"), MPoly::variable("v3")};
    auto lin = [&](const Vec3& w) {
        return MPoly::constant(w.x) * v[0] + MPoly::constant(w.y) * v[1] +
               MPoly::constant(w.z) * v[2];
    };
    MPoly vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    const Vec3* dd[3] = {&d1, &d2, &d3};
    std::array<MPoly, 3> N;
    for (int i = 0; i < 3; ++i) {
        MPoly dv = lin(*dd[i]);
        Rat k = norm2(*dd[i]) + r4sq - s[i].radius_squared;
        N[i] = MPoly::constant(k) * vv - dv * dv;
    }
    MPoly E1 = MPoly::constant(l1) * N[0] + MPoly::constant(l2) * N[1] - N[2];
    // q = U / (2 v^2 (v . B3)) with U below; q^2 = r4^2 clears to E2.
    MPoly vB3 = lin(B3);
    MPoly D = N[0] * lin(B1) + N[1] * lin(B2);
    std::array<MPoly, 3> U;
    for (int i = 0; i < 3; ++i) {
        U[i] = (N[0] * MPoly::constant(B1[i]) + N[1] * MPoly::constant(B2[i])) * vB3 -
               D * MPoly::constant(B3[i]);
    }
    MPoly UU = U[0] * U[0] + U[1] * U[1] + U[2] * U[2];
    MPoly E2 = UU - MPoly::constant(4 * r4sq) * vv * vv * vB3 * vB3;
    if (E1.is_zero() || E2.is_zero())
        throw NonGenericError("tangents_spheres_coplanar: degenerate system");

    // Gram data for directions in the center plane: q_plane = al d1 + be d2.
    Rat g11 = norm2(d1), g12 = dot(d1, d2), g22 = norm2(d2);
    Rat detG = g11 * g22 - g12 * g12;

    for (const auto& ch : detail::dir_charts()) {
        if (!detail::infinity_clear(E1, E2, ch)) continue;
        MPoly P = ch.affine(E1), Q = ch.affine(E2);
        auto pr = pair_solve(P, Q, "x", "y");
        SolveReport rep;
        if (pr.infinitely_many) {
            rep.infinitely_many = true;
            rep.degenerate_family = "tangent directions form a curve";
            rep.finalize(4);
            return rep;
        }
        rep.complex_count_with_multiplicity = (int)pr.complex_count;
        bool ok = true;
        for (const auto& ps : pr.solutions) {
            UPoly F = ps.factor;
            AlgReal a = ps.alpha;
            if (a.is_rational()) F = UPoly::x() - UPoly::constant(a.rational());
            detail::ModF m0{F};
            auto vf = ch.dir_fns(m0.reduce(ps.xrep), m0.reduce(ps.yrep), m0);
            UPoly vvf = m0.reduce(vf[0] * vf[0] + vf[1] * vf[1] + vf[2] * vf[2]);
            UPoly vB3f = m0.reduce(Rat(B3.x) * vf[0] + B3.y * vf[1] + B3.z * vf[2]);
            auto inv = detail::invert_or_split(F, a, Rat(2) * m0.mul(vvf, vB3f));
            detail::ModF m{F};
            for (auto& c : vf) c = m.reduce(c);
            if (inv) {
                std::map<std::string, UPoly> at{{"v1", vf[0]}, {"v2", vf[1]}, {"v3", vf[2]}};
                AlgLine sol;
                sol.modulus = F;
                sol.alpha = a;
                sol.dir = {vf[0], vf[1], vf[2]};
                for (int i = 0; i < 3; ++i)
                    sol.base[i] = m.reduce(UPoly::constant(c4[i]) +
                                           m.mul(detail::mpoly_eval_mod(U[i], at, m), *inv));
                sol.multiplicity = ps.multiplicity;
                if (sol.sign_at(detail::uvec_dot(sol.dir, sol.dir, m)) <= 0) { ok = false; break; }
                for (const auto& sp : spheres)
                    if (sol.tangency_sign(sp) != 0) { ok = false; break; }
                if (!ok) break;
                rep.solutions.push_back(std::move(sol));
            } else {
                // v . B3 vanished at alpha: the direction lies in the center
                // plane, and the tangent lines come in a mirror pair at height
                // tau along n with tau^2 = (r4^2 - |q_plane|^2) / |n|^2.
                if (ps.multiplicity % 2 != 0) { ok = false; break; }
                detail::ModF mf{F};
                for (auto& c : vf) c = mf.reduce(c);
                UPoly vv2 = mf.reduce(vf[0] * vf[0] + vf[1] * vf[1] + vf[2] * vf[2]);
                std::map<std::string, UPoly> at{{"v1", vf[0]}, {"v2", vf[1]}, {"v3", vf[2]}};
                UPoly N1f = detail::mpoly_eval_mod(N[0], at, mf);
                UPoly N2f = detail::mpoly_eval_mod(N[1], at, mf);
                // 2 v^2 detG (al, be) = (g22 N1 - g12 N2, g11 N2 - g12 N1).
                UPoly aln = mf.reduce(g22 * N1f - g12 * N2f);
                UPoly ben = mf.reduce(g11 * N2f - g12 * N1f);
                detail::UVec3 qp;  // numerator of q_plane, denominator 2 v^2 detG
                for (int i = 0; i < 3; ++i)
                    qp[i] = mf.reduce(aln * d1[i] + ben * d2[i]);
                UPoly den = mf.reduce(2 * detG * vv2);
                UPoly qq = detail::uvec_dot(qp, qp, mf);
                // tau^2 |n|^2 den^2 + |qp|^2 - r4^2 den^2 = 0.
                UPoly cpol = mf.reduce(norm2(n) * den * den);
                UPoly gpol = mf.reduce(qq - r4sq * den * den);
                MPoly Fu = MPoly::from_upoly(F, "u");
                MPoly tvar = MPoly::variable("t");
                MPoly G2 = tvar * tvar * MPoly::from_upoly(cpol, "u") +
                           MPoly::from_upoly(gpol, "u");
                auto pr2 = pair_solve(Fu, G2, "u", "t");
                if (pr2.infinitely_many) { ok = false; break; }
                for (const auto& qs : pr2.solutions) {
                    // Keep only the branch over this alpha.
                    AlgReal ua = qs.eval_coord(qs.xrep);
                    if (!(ua == a)) continue;
                    UPoly F2 = qs.factor;
                    AlgReal a2 = qs.alpha;
                    detail::ModF m2{F2};
                    UPoly ur = m2.reduce(qs.xrep), tr = m2.reduce(qs.yrep);
                    // Rebuild direction and planar foot over the new modulus.
                    auto compose2 = [&](const UPoly& h) {
                        return detail::compose_mod(m2, h, ur);
                    };
                    AlgLine sol;
                    sol.modulus = F2;
                    sol.alpha = a2;
                    sol.dir = {compose2(vf[0]), compose2(vf[1]), compose2(vf[2])};
                    UPoly den2 = compose2(den);
                    auto invd = detail::invert_or_split(F2, a2, den2);
                    if (!invd) { ok = false; break; }
                    detail::ModF m3{F2};
                    sol.modulus = F2;
                    sol.alpha = a2;
                    for (auto& c : sol.dir) c = m3.reduce(c);
                    tr = m3.reduce(tr);
                    for (int i = 0; i < 3; ++i)
                        sol.base[i] = m3.reduce(
                            UPoly::constant(c4[i]) +
                            m3.mul(detail::compose_mod(m3, qp[i], m3.reduce(ur)), *invd) +
                            n[i] * tr);
                    sol.multiplicity = ps.multiplicity / 2 * qs.multiplicity;
                    if (sol.sign_at(detail::uvec_dot(sol.dir, sol.dir, m3)) <= 0) {
                        ok = false;
                        break;
                    }
                    bool tangent = true;
                    for (const auto& sp : spheres)
                        if (sol.tangency_sign(sp) != 0) { tangent = false; break; }
                    if (!tangent) { ok = false; break; }
                    rep.solutions.push_back(std::move(sol));
                }
                if (!ok) break;
            }
        }
        if (!ok) continue;
        rep.finalize(4);
        return rep;
    }
    throw NonGenericError("tangents_spheres_coplanar: no usable direction chart");
}

}  // namespace linetan
