#pragma once

#include "linetan/solver_spheres.hpp"

namespace linetan {

namespace detail {

// Polynomial 3-vectors without a modulus, for parametrized line geometry.
inline UVec3 pvec_const(const Vec3& v) {
    return {UPoly::constant(v.x), UPoly::constant(v.y), UPoly::constant(v.z)};
}
inline UVec3 pvec_line(const LineR3& l) {  // point l.base + t * l.direction
    UVec3 out = pvec_const(l.base);
    for (int i = 0; i < 3; ++i) out[i] = out[i] + l.direction[i] * UPoly::x();
    return out;
}
inline UVec3 pvec_sub(const UVec3& a, const UVec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline UVec3 pvec_cross(const UVec3& a, const UVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}
inline UPoly pvec_dot(const UVec3& a, const UVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Plücker coordinate polynomials of the line through x(t) with direction w(t),
// in the library's (direction, moment) component order.
inline std::array<UPoly, 6> pvec_pluecker(const UVec3& x, const UVec3& w) {
    UVec3 mom = pvec_cross(x, w);
    return {w[0], w[1], w[2], mom[2], -mom[1], mom[0]};
}

// Divide the common polynomial content out of a Plücker vector.
inline void pluecker_strip_content(std::array<UPoly, 6>& p) {
    UPoly g;
    for (const auto& c : p)
        if (!c.is_zero()) g = g.is_zero() ? c : UPoly::gcd(g, c);
    if (g.degree() > 0)
        for (auto& c : p) c = UPoly::exact_div(c, g);
}

// Tangency form of a polynomial Plücker vector against a sphere.
inline UPoly pluecker_tangency(const std::array<UPoly, 6>& p, const Sphere& s) {
    auto W = wedge2(Quadric::from_sphere(s));
    UPoly acc;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            if (sgn(W[r][c]) != 0) acc = acc + W[r][c] * (p[r] * p[c]);
    return acc;
}

// Push real roots of the univariate tangency polynomial T (projective degree
// projdeg on the parametrized family) as lines with base/dir polynomials in
// the parameter, plus a rational candidate for the root at infinity when the
// degree drops. In strict mode every root must certify against the full
// configuration; in tolerant mode (pencil decompositions of non-generic
// inputs) failing roots are dropped and their total multiplicity returned.
inline int push_parametrized_tangents(SolveReport& rep, const UPoly& T, int projdeg,
                                      const UVec3& base, const UVec3& dir,
                                      const std::optional<LineR3>& inf_candidate,
                                      const std::vector<Sphere>& spheres,
                                      const std::vector<LineR3>& lines, bool strict) {
    int dropped = 0;
    UPoly sf = squarefree_part(T);
    ModF m{sf};
    for (const auto& iv : isolate_real_roots(T)) {
        AlgLine sol;
        sol.modulus = sf;
        sol.alpha = AlgReal::from_interval(sf, iv);
        for (int i = 0; i < 3; ++i) {
            sol.base[i] = m.reduce(base[i]);
            sol.dir[i] = m.reduce(dir[i]);
        }
        sol.multiplicity = iv.multiplicity;
        bool ok = sol.sign_at(uvec_dot(sol.dir, sol.dir, m)) > 0;
        for (const auto& s : spheres) ok = ok && sol.tangency_sign(s) == 0;
        for (const auto& l : lines) ok = ok && sol.incidence_sign(l) == 0;
        if (!ok) {
            if (strict) throw std::logic_error("parametrized tangent fails certification");
            dropped += iv.multiplicity;
            continue;
        }
        rep.solutions.push_back(std::move(sol));
    }
    int drop = projdeg - T.degree();
    if (drop > 0) {
        bool ok = inf_candidate.has_value();
        if (ok) {
            for (const auto& s : spheres)
                ok = ok && sgn(tangency_form_affine(*inf_candidate, s)) == 0;
            for (const auto& l : lines)
                ok = ok && (same_line(*inf_candidate, l) || lines_meet(*inf_candidate, l));
        }
        if (ok) {
            rep.solutions.push_back(AlgLine::from_rational(*inf_candidate, drop));
        } else {
            if (strict)
                throw NonGenericError("tangency degree drop without a certified parallel line");
            dropped += drop;
        }
    }
    return dropped;
}

// Multivariate polynomial 3-vectors for two-parameter line families.
using MVec3 = std::array<MPoly, 3>;

inline MVec3 mvec_const(const Vec3& v) {
    return {MPoly::constant(v.x), MPoly::constant(v.y), MPoly::constant(v.z)};
}
inline MVec3 mvec_line(const LineR3& l, const std::string& var) {
    MVec3 out = mvec_const(l.base);
    for (int i = 0; i < 3; ++i)
        out[i] = out[i] + MPoly::constant(l.direction[i]) * MPoly::variable(var);
    return out;
}
inline MVec3 mvec_sub(const MVec3& a, const MVec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline MVec3 mvec_cross(const MVec3& a, const MVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}
inline MPoly mvec_dot(const MVec3& a, const MVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// |(c - base) x dir|^2 - r^2 |dir|^2: zero iff the line is tangent.
inline MPoly tangency_mpoly(const MVec3& base, const MVec3& dir, const Sphere& s) {
    auto w = mvec_cross(mvec_sub(mvec_const(s.center), base), dir);
    return mvec_dot(w, w) - MPoly::constant(s.radius_squared) * mvec_dot(dir, dir);
}

// Tangent cone condition from point p: directions v with the line (p, v)
// tangent to the sphere, as a homogeneous conic in v1, v2, v3.
inline MPoly tangent_cone_conic(const Point3& p, const Sphere& s) {
    MVec3 v{MPoly::variable("v1"), MPoly::variable("v2"), MPoly::variable("v3")};
    return tangency_mpoly(mvec_const(p), v, s);
}

// Candidate lines through x(t) on a fixed line with direction v: each
// tangency condition F_i is quadratic in t with the shared leading
// coefficient L = |d x v|^2, so Res_t(F_i, F_j) = L * S_ij with the sextic
// S_ij = L dc^2 - b_i db dc + c_i db^2 (db = b_i - b_j, dc = c_i - c_j).
// The cleaned sextics S_12, S_13 still vanish at the direction of every
// common root of the system, including the L = 0 directions.
struct OneLineSystem {
    std::array<MPoly, 3> F;  // in t, v1, v2, v3
    MPoly S12, S13;          // homogeneous sextics in v1, v2, v3
};

inline OneLineSystem one_line_three_spheres_system(const std::vector<Sphere>& spheres,
                                                   const LineR3& line) {
    OneLineSystem sys;
    MVec3 v{MPoly::variable("v1"), MPoly::variable("v2"), MPoly::variable("v3")};
    MVec3 x = mvec_line(line, "t");
    std::array<MPoly, 3> b, c;
    for (int i = 0; i < 3; ++i) {
        sys.F[i] = tangency_mpoly(x, v, spheres[i]);
        auto cs = sys.F[i].coeffs_in("t");
        if (cs.size() != 3)
            throw std::logic_error("one_line_three_spheres_system: tangency not quadratic");
        c[i] = cs[0];
        b[i] = cs[1];
    }
    MPoly L = sys.F[0].coeffs_in("t")[2];
    auto cleaned = [&](int j) {
        MPoly db = b[0] - b[j], dc = c[0] - c[j];
        return L * dc * dc - b[0] * db * dc + c[0] * db * db;
    };
    sys.S12 = cleaned(1);
    sys.S13 = cleaned(2);
    return sys;
}

}  // namespace detail

// One sphere and three lines. Pairwise skew lines give the transversal-ruling
// parametrization with a degree-4 tangency polynomial; a meeting pair splits
// the transversals into the pencil through the intersection point and the
// pencil in the common plane, each with a quadratic tangency condition.
inline SolveReport tangents_one_sphere_three_lines(const Sphere& sphere,
                                                   const std::vector<LineR3>& lines) {
    if (lines.size() != 3)
        throw std::invalid_argument("tangents_one_sphere_three_lines: need 3 lines");
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            if (same_line(lines[i], lines[j])) throw DuplicateLineError();
    SolveReport rep;
    std::vector<Sphere> spheres{sphere};

    bool skew = true;
    for (size_t i = 0; i < 3 && skew; ++i)
        for (size_t j = i + 1; j < 3 && skew; ++j)
            if (lines_meet(lines[i], lines[j])) skew = false;

    if (skew) {
        // Transversal ruling through x(t) on line 0: direction from the two
        // planes spanned by x with lines 1 and 2 (never degenerate for skew
        // lines since x lies on neither).
        auto x = detail::pvec_line(lines[0]);
        auto n1 = detail::pvec_cross(
            detail::pvec_sub(detail::pvec_const(lines[1].base), x),
            detail::pvec_const(lines[1].direction));
        auto n2 = detail::pvec_cross(
            detail::pvec_sub(detail::pvec_const(lines[2].base), x),
            detail::pvec_const(lines[2].direction));
        auto w = detail::pvec_cross(n1, n2);
        auto plk = detail::pvec_pluecker(x, w);
        detail::pluecker_strip_content(plk);
        UPoly T = detail::pluecker_tangency(plk, sphere);
        if (T.is_zero()) {
            rep.infinitely_many = true;
            rep.degenerate_family = "whole transversal ruling tangent to the sphere";
            rep.finalize(1);
            return rep;
        }
        rep.complex_count_with_multiplicity = 4;
        // Root at infinity: the transversal parallel to line 0.
        std::optional<LineR3> inf;
        {
            Vec3 nh = cross(lines[2].direction, lines[0].direction);
            auto xb = detail::intersect_line_plane(lines[1], lines[2].base, nh);
            if (xb) {
                LineR3 cand(*xb, lines[0].direction);
                if (lines_meet(cand, lines[1]) && lines_meet(cand, lines[2])) inf = cand;
            }
        }
        detail::push_parametrized_tangents(rep, T, 4, x, w, inf, spheres, lines, true);
        rep.finalize(1);
        return rep;
    }

    // A meeting (or parallel) pair exists. Three concurrent or coplanar lines
    // admit a two-parameter transversal family, hence a tangent cone/family.
    int ia = -1, ib = -1;
    for (int i = 0; i < 3 && ia < 0; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (lines_meet(lines[i], lines[j])) { ia = i; ib = j; break; }
    const LineR3 &la = lines[ia], &lb = lines[ib], &lc = lines[3 - ia - ib];
    Vec3 nH = cross(la.direction, lb.direction);
    bool parallel_pair = nH.is_zero();
    if (parallel_pair) {
        nH = cross(la.direction, cross(la.direction, lb.base - la.base));
        if (nH.is_zero()) throw std::logic_error("parallel pair without a plane");
    }
    std::optional<Point3> p;
    if (!parallel_pair) p = detail::intersect_lines(la, lb);
    bool c_through_p = p && cross(lc.base - *p, lc.direction).is_zero();
    Point3 h0 = p ? *p : la.base;
    bool c_in_H = sgn(dot(lc.base - h0, nH)) == 0 && sgn(dot(lc.direction, nH)) == 0;
    if (c_through_p || c_in_H) {
        rep.infinitely_many = true;
        rep.degenerate_family = c_through_p
                                    ? "concurrent lines: tangent cone through the point"
                                    : "coplanar lines: tangent family in the plane";
        rep.finalize(1);
        return rep;
    }

    // Pencil through the intersection point, meeting the third line:
    // parametrized by a point y(t) on it. Absent for a parallel pair, whose
    // transversals all lie in the common plane.
    if (p) {
        auto y = detail::pvec_line(lc);
        auto base = detail::pvec_const(*p);
        auto dir = detail::pvec_sub(y, base);
        auto plk = detail::pvec_pluecker(base, dir);
        detail::pluecker_strip_content(plk);
        UPoly T = detail::pluecker_tangency(plk, sphere);
        if (T.is_zero()) {
            rep.infinitely_many = true;
            rep.degenerate_family = "pencil through the intersection point tangent everywhere";
            rep.finalize(1);
            return rep;
        }
        // The parameter at infinity gives the line through p parallel to the
        // third line, which never meets it affinely.
        int dropped = detail::push_parametrized_tangents(rep, T, 2, base, dir,
                                                         std::nullopt, spheres, lines, false);
        rep.complex_count_with_multiplicity += 2 - dropped;
    }

    // Pencil inside the common plane H through the plane point of the third
    // line; directions parametrized in the span of the two pair directions.
    auto q = detail::intersect_line_plane(lc, h0, nH);
    if (q) {
        Vec3 e1 = la.direction;
        Vec3 e2 = parallel_pair ? cross(nH, e1) : lb.direction;
        auto base = detail::pvec_const(*q);
        detail::UVec3 dir = detail::pvec_const(e1);
        for (int i = 0; i < 3; ++i) dir[i] = dir[i] + e2[i] * UPoly::x();
        auto plk = detail::pvec_pluecker(base, dir);
        detail::pluecker_strip_content(plk);
        UPoly T = detail::pluecker_tangency(plk, sphere);
        if (T.is_zero()) {
            rep.infinitely_many = true;
            rep.degenerate_family = "in-plane pencil tangent everywhere";
            rep.finalize(1);
            return rep;
        }
        std::optional<LineR3> inf;
        {
            LineR3 cand(*q, e2);
            bool meets = true;
            for (const auto& l : lines) meets &= (same_line(cand, l) || lines_meet(cand, l));
            if (meets) inf = cand;
        }
        int dropped = detail::push_parametrized_tangents(rep, T, 2, base, dir, inf,
                                                         spheres, lines, false);
        rep.complex_count_with_multiplicity += 2 - dropped;
    }
    // A third line parallel to H meets in-plane lines only at infinity, so
    // that pencil contributes nothing.

    // Merge lines found by both pencils (a tangent through p inside H).
    for (size_t i = 0; i < rep.solutions.size(); ++i)
        for (size_t j = rep.solutions.size(); j-- > i + 1;)
            if (rep.solutions[i].same_line_as(rep.solutions[j])) {
                rep.solutions[i].multiplicity += rep.solutions[j].multiplicity;
                rep.solutions.erase(rep.solutions.begin() + (long)j);
            }
    rep.finalize(1);
    rep.generic = false;  // meeting-line inputs are always non-generic
    return rep;
}

// Two spheres and two lines. Skew lines parametrize candidate lines by a
// point on each; the two tangency conditions are bidegree (2,2) and solved by
// resultant elimination with exact back-substitution. Meeting (or parallel)
// lines decompose the transversals into the pencil of lines through the
// intersection point (common rulings of two tangent cones) and the lines of
// the common plane (common tangents of two conics, solved dually).
inline SolveReport tangents_two_spheres_two_lines(const std::vector<Sphere>& spheres,
                                                  const std::vector<LineR3>& lines) {
    if (spheres.size() != 2 || lines.size() != 2)
        throw std::invalid_argument("tangents_two_spheres_two_lines: need 2 + 2");
    if (same_line(lines[0], lines[1])) throw DuplicateLineError();
    if (spheres[0].center == spheres[1].center &&
        spheres[0].radius_squared == spheres[1].radius_squared)
        throw DuplicateSphereError();
    SolveReport rep;
    const LineR3 &la = lines[0], &lb = lines[1];

    if (!lines_meet(la, lb) && !parallel(la.direction, lb.direction)) {
        auto x = detail::mvec_line(la, "t");
        auto y = detail::mvec_line(lb, "u");
        auto dir = detail::mvec_sub(y, x);
        MPoly F1 = detail::tangency_mpoly(x, dir, spheres[0]);
        MPoly F2 = detail::tangency_mpoly(x, dir, spheres[1]);
        auto ps = pair_solve(F1, F2, "t", "u");
        if (ps.infinitely_many) {
            rep.infinitely_many = true;
            rep.degenerate_family = "transversal family tangent to both spheres";
            rep.finalize(2);
            return rep;
        }
        rep.complex_count_with_multiplicity = (int)ps.complex_count;
        for (const auto& sol : ps.solutions) {
            detail::ModF m{sol.factor};
            AlgLine out;
            out.modulus = sol.factor;
            out.alpha = sol.alpha;
            for (int i = 0; i < 3; ++i) {
                out.base[i] = m.reduce(UPoly::constant(la.base[i]) + la.direction[i] * sol.xrep);
                UPoly yi = UPoly::constant(lb.base[i]) + lb.direction[i] * sol.yrep;
                out.dir[i] = m.reduce(yi - out.base[i]);
            }
            out.multiplicity = sol.multiplicity;
            if (out.sign_at(detail::uvec_dot(out.dir, out.dir, m)) <= 0)
                throw std::logic_error("two-two solution with vanishing direction");
            for (const auto& s : spheres)
                if (out.tangency_sign(s) != 0)
                    throw std::logic_error("two-two solution fails tangency");
            for (const auto& l : lines)
                if (out.incidence_sign(l) != 0)
                    throw std::logic_error("two-two solution fails incidence");
            rep.solutions.push_back(std::move(out));
        }
        rep.finalize(2);
        return rep;
    }

    // Meeting or parallel lines.
    Vec3 nH = cross(la.direction, lb.direction);
    bool parallel_pair = nH.is_zero();
    if (parallel_pair) {
        nH = cross(la.direction, cross(la.direction, lb.base - la.base));
        if (nH.is_zero()) throw std::logic_error("parallel pair without a plane");
    }
    std::optional<Point3> p;
    if (!parallel_pair) p = detail::intersect_lines(la, lb);

    // Pencil through the intersection point: common rulings of the two
    // tangent cones from p.
    if (p) {
        MPoly A = detail::tangent_cone_conic(*p, spheres[0]);
        MPoly B = detail::tangent_cone_conic(*p, spheres[1]);
        auto p2 = detail::solve_homogeneous_pair_p2(A, B);
        if (p2.infinitely_many) {
            rep.infinitely_many = true;
            rep.degenerate_family = "tangent cones from the intersection point share a family";
            rep.finalize(2);
            return rep;
        }
        rep.complex_count_with_multiplicity += (int)p2.complex_count;
        for (const auto& rz : p2.reals) {
            detail::ModF m{rz.factor};
            AlgLine out;
            out.modulus = rz.factor;
            out.alpha = rz.alpha;
            for (int i = 0; i < 3; ++i) {
                out.base[i] = UPoly::constant((*p)[i]);
                out.dir[i] = m.reduce(rz.coords[i]);
            }
            out.multiplicity = rz.multiplicity;
            for (const auto& s : spheres)
                if (out.tangency_sign(s) != 0)
                    throw std::logic_error("cone ruling fails tangency");
            rep.solutions.push_back(std::move(out));
        }
    }

    // Lines of the common plane H: dual-conic intersection. Points of H are
    // o + xi*e1 + eta*e2; a line is v1*xi + v2*eta + v3 = 0 (homogenized),
    // tangent to a sphere iff it is tangent to the sphere's trace conic,
    // i.e. lies on the adjugate (dual) conic.
    {
        Point3 o = p ? *p : la.base;
        Vec3 e1 = la.direction;
        Vec3 e2 = parallel_pair ? cross(nH, e1) : lb.direction;
        Rat g11 = dot(e1, e1), g12 = dot(e1, e2), g22 = dot(e2, e2);
        auto dual_conic = [&](const Sphere& s) {
            Rat b1 = dot(e1, o - s.center), b2 = dot(e2, o - s.center);
            Rat c0 = dot(o - s.center, o - s.center) - s.radius_squared;
            Rat Q[3][3] = {{g11, g12, b1}, {g12, g22, b2}, {b1, b2, c0}};
            Rat adj[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
                    int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
                    adj[j][i] = Q[i1][j1] * Q[i2][j2] - Q[i1][j2] * Q[i2][j1];
                }
            MPoly v[3] = {MPoly::variable("v1"), MPoly::variable("v2"),
                          MPoly::variable("v3")};
            MPoly out;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    if (sgn(adj[i][j]) != 0)
                        out = out + MPoly::constant(adj[i][j]) * v[i] * v[j];
            return out;
        };
        MPoly D1 = dual_conic(spheres[0]), D2 = dual_conic(spheres[1]);
        if (D1.is_zero() || D2.is_zero()) {
            rep.infinitely_many = true;
            rep.degenerate_family = "plane trace conic degenerates";
            rep.finalize(2);
            return rep;
        }
        auto p2 = detail::solve_homogeneous_pair_p2(D1, D2);
        if (p2.infinitely_many) {
            rep.infinitely_many = true;
            rep.degenerate_family = "trace conics share a dual component";
            rep.finalize(2);
            return rep;
        }
        int kept = 0;
        for (auto rz : p2.reals) {
            // (v1, v2) never both vanish on the dual conics (the [3][3]
            // adjugate entry is the positive Gram determinant), so the line
            // has the in-plane direction (-v2, v1) and passes through the
            // point s*(v1, v2) with s = -v3 / (v1^2 + v2^2).
            detail::ModF m0{rz.factor};
            UPoly nrm = m0.reduce(m0.mul(rz.coords[0], rz.coords[0]) +
                                  m0.mul(rz.coords[1], rz.coords[1]));
            auto inv = detail::invert_or_split(rz.factor, rz.alpha, nrm);
            if (!inv) throw std::logic_error("dual line with isotropic normal");
            detail::ModF m{rz.factor};
            UPoly s = m.mul(m.reduce(-rz.coords[2]), *inv);
            AlgLine out;
            out.modulus = rz.factor;
            out.alpha = rz.alpha;
            for (int i = 0; i < 3; ++i) {
                UPoly xi = m.mul(s, m.reduce(rz.coords[0]));
                UPoly eta = m.mul(s, m.reduce(rz.coords[1]));
                out.base[i] = m.reduce(UPoly::constant(o[i]) + e1[i] * xi + e2[i] * eta);
                out.dir[i] =
                    m.reduce(e2[i] * rz.coords[0] - e1[i] * rz.coords[1]);
            }
            out.multiplicity = rz.multiplicity;
            bool ok = true;
            for (const auto& sph : spheres) ok = ok && out.tangency_sign(sph) == 0;
            for (const auto& l : lines) ok = ok && out.incidence_sign(l) == 0;
            if (!ok) continue;  // e.g. a tangent parallel to one of the lines
            kept += rz.multiplicity;
            rep.solutions.push_back(std::move(out));
        }
        // Real tangents in H that fail to meet a line (parallel direction)
        // were dropped above; account for them in the complex count.
        rep.complex_count_with_multiplicity += (int)p2.complex_count;
        int real_total = 0;
        for (const auto& rz : p2.reals) real_total += rz.multiplicity;
        rep.complex_count_with_multiplicity -= real_total - kept;
    }

    // Merge lines found by both families (a tangent through p inside H).
    for (size_t i = 0; i < rep.solutions.size(); ++i)
        for (size_t j = rep.solutions.size(); j-- > i + 1;)
            if (rep.solutions[i].same_line_as(rep.solutions[j])) {
                rep.solutions[i].multiplicity += rep.solutions[j].multiplicity;
                rep.solutions.erase(rep.solutions.begin() + (long)j);
            }
    rep.finalize(2);
    rep.generic = false;  // meeting-line inputs are always non-generic
    return rep;
}

// Three spheres and one line. Candidates pass through x(t) on the line with
// direction v; the cleaned pairwise t-resultants are two sextic curves in the
// direction plane, solved in an exact affine chart with recovery of t and
// certification of the third tangency on every branch. Lines meeting the
// input only at infinity (parallels) are outside the parametrization, which
// leaves the twelve geometrically meaningful solutions.
inline SolveReport tangents_three_spheres_one_line(const std::vector<Sphere>& spheres,
                                                   const LineR3& line) {
    if (spheres.size() != 3)
        throw std::invalid_argument("tangents_three_spheres_one_line: need 3 spheres");
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            if (spheres[i].center == spheres[j].center &&
                spheres[i].radius_squared == spheres[j].radius_squared)
                throw DuplicateSphereError();
    SolveReport rep;
    auto sys = detail::one_line_three_spheres_system(spheres, line);
    if (sys.S12.is_zero() || sys.S13.is_zero()) {
        rep.infinitely_many = true;
        rep.degenerate_family = "two tangency conditions coincide along the line";
        rep.finalize(3);
        return rep;
    }

    bool saw_infinite = false;
    for (const auto& ch : detail::dir_charts()) {
        if (!detail::infinity_clear(sys.S12, sys.S13, ch)) continue;
        detail::TripleSolve ts;
        try {
            ts = detail::solve_triple_given(ch.affine(sys.F[0]), ch.affine(sys.F[1]),
                                            ch.affine(sys.F[2]), ch.affine(sys.S12),
                                            ch.affine(sys.S13), "x", "y", "t");
        } catch (const std::logic_error&) {
            continue;
        }
        if (ts.infinitely_many) {
            saw_infinite = true;
            continue;
        }
        rep.complex_count_with_multiplicity = (int)ts.complex_count;
        for (const auto& sol : ts.sols) {
            detail::ModF m{sol.factor};
            AlgLine out;
            out.modulus = sol.factor;
            out.alpha = sol.alpha;
            for (int i = 0; i < 3; ++i)
                out.base[i] =
                    m.reduce(UPoly::constant(line.base[i]) + line.direction[i] * sol.z);
            out.dir = ch.dir_fns(sol.x, sol.y, m);
            out.multiplicity = sol.multiplicity;
            if (out.sign_at(detail::uvec_dot(out.dir, out.dir, m)) <= 0)
                throw std::logic_error("three-sphere solution with vanishing direction");
            for (const auto& s : spheres)
                if (out.tangency_sign(s) != 0)
                    throw std::logic_error("three-sphere solution fails tangency");
            if (out.incidence_sign(line) != 0)
                throw std::logic_error("three-sphere solution fails incidence");
            rep.solutions.push_back(std::move(out));
        }
        rep.finalize(3);
        return rep;
    }
    if (saw_infinite) {
        rep.infinitely_many = true;
        rep.degenerate_family = "positive-dimensional tangent family along the line";
        rep.finalize(3);
        return rep;
    }
    throw NonGenericError("no exact chart for the three-sphere one-line system");
}

}  // namespace linetan
