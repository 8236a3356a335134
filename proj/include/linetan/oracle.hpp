#pragma once

#include <algorithm>

#include "linetan/solver_mixed.hpp"

namespace linetan {

// Independent route through line-space coordinates: solutions are computed as
// Plücker vectors directly, with no per-solution data shared with the affine
// solvers, so agreement between the two is a real cross-check.
struct PlueckerSolution {
    UPoly modulus;
    AlgReal alpha;
    std::array<UPoly, 6> plk;  // entries are functions of alpha
    int multiplicity = 1;
};

struct OracleResult {
    bool infinitely_many = false;
    int complex_count_with_multiplicity = 0;
    std::vector<PlueckerSolution> solutions;
};

inline bool matches(const AlgLine& l, const PlueckerSolution& s) {
    return pluecker_proportional_mod(l.pluecker_fns(), l.alpha, l.modulus, s.plk,
                                     s.alpha, s.modulus);
}

// Every real solution of each side appears on the other with equal multiplicity.
inline bool oracle_agrees(const SolveReport& rep, const OracleResult& orc) {
    if (rep.infinitely_many || orc.infinitely_many)
        return rep.infinitely_many == orc.infinitely_many;
    if (rep.complex_count_with_multiplicity != orc.complex_count_with_multiplicity)
        return false;
    if (rep.solutions.size() != orc.solutions.size()) return false;
    std::vector<bool> used(orc.solutions.size(), false);
    for (const auto& l : rep.solutions) {
        bool hit = false;
        for (size_t i = 0; i < orc.solutions.size() && !hit; ++i) {
            if (used[i] || orc.solutions[i].multiplicity != l.multiplicity) continue;
            if (matches(l, orc.solutions[i])) used[i] = hit = true;
        }
        if (!hit) return false;
    }
    return true;
}

namespace detail {

// The Plücker quadratic form q01 q23 - q02 q13 + q03 q12 and its polar.
inline Rat plk_rel(const std::vector<Rat>& q) {
    return q[0] * q[5] - q[1] * q[4] + q[2] * q[3];
}
inline Rat plk_polar(const std::vector<Rat>& u, const std::vector<Rat>& v) {
    return u[0] * v[5] + v[0] * u[5] - u[1] * v[4] - v[1] * u[4] + u[2] * v[3] +
           v[2] * u[3];
}

}  // namespace detail

// Lines meeting four given lines, solved in line space: the four incidence
// conditions are linear on the Plücker quadric, so the solutions are the
// intersection of a pencil with that quadric, a binary quadratic.
inline OracleResult transversal_oracle(const std::vector<LineR3>& lines) {
    if (lines.size() != 4) throw std::invalid_argument("transversal_oracle: need 4 lines");
    OracleResult out;
    Mat m(4, 6);
    for (int r = 0; r < 4; ++r) {
        auto p = to_pluecker(lines[r]);
        // Incidence form as a linear functional on the unknown vector.
        Rat row[6] = {p.p[5], -p.p[4], p.p[3], p.p[2], -p.p[1], p.p[0]};
        for (int c = 0; c < 6; ++c) m(r, c) = row[c];
    }
    auto ns = m.nullspace();
    if (ns.size() > 2) {
        out.infinitely_many = true;
        return out;
    }
    if (ns.size() < 2) throw std::logic_error("transversal_oracle: nullspace too small");
    const auto& u = ns[0];
    const auto& v = ns[1];
    Rat A = detail::plk_rel(u), B = detail::plk_polar(u, v), C = detail::plk_rel(v);
    if (sgn(A) == 0 && sgn(B) == 0 && sgn(C) == 0) {
        out.infinitely_many = true;  // the whole pencil lies on the quadric
        return out;
    }
    out.complex_count_with_multiplicity = 2;
    auto push = [&](const AlgReal& s, const UPoly& modulus, int mult) {
        PlueckerSolution ps;
        ps.modulus = modulus;
        ps.alpha = s;
        for (int i = 0; i < 6; ++i)
            ps.plk[i] = detail::ModF{modulus}.reduce(UPoly::of({v[i], u[i]}));
        ps.multiplicity = mult;
        out.solutions.push_back(std::move(ps));
    };
    // Chart q = s*u + v.
    UPoly quad = UPoly::of({C, B, A});
    for (const auto& iv : isolate_real_roots(quad)) {
        UPoly sf = squarefree_part(quad);
        push(AlgReal::from_interval(sf, iv), sf, iv.multiplicity);
    }
    // Root at infinity: q = u itself (degree drop in s).
    if (sgn(A) == 0) {
        PlueckerSolution ps;
        ps.modulus = UPoly::x();
        ps.alpha = AlgReal(Rat(0));
        for (int i = 0; i < 6; ++i) ps.plk[i] = UPoly::constant(u[i]);
        ps.multiplicity = sgn(B) == 0 ? 2 : 1;
        out.solutions.push_back(std::move(ps));
    }
    return out;
}

namespace detail {

// Incidence rows of the given lines as linear functionals on line space.
inline Mat incidence_matrix(const std::vector<LineR3>& lines) {
    Mat m((int)lines.size(), 6);
    for (int r = 0; r < (int)lines.size(); ++r) {
        auto p = to_pluecker(lines[r]);
        Rat row[6] = {p.p[5], -p.p[4], p.p[3], p.p[2], -p.p[1], p.p[0]};
        for (int c = 0; c < 6; ++c) m(r, c) = row[c];
    }
    return m;
}

}  // namespace detail

// Lines meeting three given lines and tangent to one sphere, solved in line
// space: the incidence conditions leave a projective plane of candidate
// Plücker vectors, on which the Plücker relation and the tangency condition
// cut out two conics. Their four intersection points are the solutions.
inline OracleResult tangent_oracle_one_sphere_three_lines(const Sphere& sphere,
                                                          const std::vector<LineR3>& lines) {
    if (lines.size() != 3)
        throw std::invalid_argument("tangent_oracle_one_sphere_three_lines: need 3 lines");
    OracleResult out;
    auto ns = detail::incidence_matrix(lines).nullspace();
    if (ns.size() != 3) {
        out.infinitely_many = true;  // dependent incidence conditions
        return out;
    }
    std::array<MPoly, 6> q;
    const char* vn[3] = {"v1", "v2", "v3"};
    for (int c = 0; c < 6; ++c)
        for (int j = 0; j < 3; ++j)
            q[c] = q[c] + MPoly::constant(ns[j][c]) * MPoly::variable(vn[j]);
    MPoly conicP = q[0] * q[5] - q[1] * q[4] + q[2] * q[3];
    auto W = wedge2(Quadric::from_sphere(sphere));
    MPoly conicT;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            if (sgn(W[r][c]) != 0) conicT = conicT + MPoly::constant(W[r][c]) * q[r] * q[c];
    if (conicP.is_zero() || conicT.is_zero()) {
        out.infinitely_many = true;
        return out;
    }
    auto sol = detail::solve_homogeneous_pair_p2(conicP, conicT);
    if (sol.infinitely_many) {
        out.infinitely_many = true;
        return out;
    }
    out.complex_count_with_multiplicity = (int)sol.complex_count;
    auto plk_fns = [&](const std::array<UPoly, 3>& coords, const detail::ModF& m) {
        std::array<UPoly, 6> plk;
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 3; ++j) plk[i] = plk[i] + coords[j] * ns[j][i];
            plk[i] = m.reduce(plk[i]);
        }
        return plk;
    };
    // Branches whose direction components vanish identically are lines at
    // infinity of the projective closure, not affine tangents: drop them.
    for (const auto& br : sol.branches) {
        detail::ModF m{br.factor};
        auto plk = plk_fns(br.coords, m);
        UPoly d = UPoly::gcd(UPoly::gcd(plk[0], plk[1]), plk[2]);
        UPoly h = d.is_zero() ? br.factor : UPoly::gcd(br.factor, d);
        if (h.degree() > 0)
            out.complex_count_with_multiplicity -= (int)h.degree() * br.multiplicity;
    }
    for (const auto& rz : sol.reals) {
        detail::ModF m{rz.factor};
        PlueckerSolution ps;
        ps.modulus = rz.factor;
        ps.alpha = rz.alpha;
        ps.plk = plk_fns(rz.coords, m);
        ps.multiplicity = rz.multiplicity;
        bool at_infinity = true;
        for (int i = 0; i < 3 && at_infinity; ++i)
            at_infinity = ps.alpha.sign_at(ps.plk[i]) == 0;
        if (!at_infinity) out.solutions.push_back(std::move(ps));
    }
    return out;
}

namespace detail {

inline MPoly plk_rel_mpoly(const std::array<MPoly, 6>& q) {
    return q[0] * q[5] - q[1] * q[4] + q[2] * q[3];
}

inline MPoly tangency_mpoly6(const std::array<MPoly, 6>& q, const Sphere& s) {
    auto W = wedge2(Quadric::from_sphere(s));
    MPoly out;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            if (sgn(W[r][c]) != 0) out = out + MPoly::constant(W[r][c]) * q[r] * q[c];
    return out;
}

}  // namespace detail

// Lines meeting two given lines and tangent to two spheres, solved in line
// space: the incidence conditions leave a projective 3-space, on which the
// Plücker relation and the two tangency conditions cut out three quadrics
// with eight intersection points. The affine chart of the 3-space is varied
// until an exact check shows no solution on its plane at infinity.
inline OracleResult tangent_oracle_two_spheres_two_lines(const std::vector<Sphere>& spheres,
                                                         const std::vector<LineR3>& lines) {
    if (spheres.size() != 2 || lines.size() != 2)
        throw std::invalid_argument("tangent_oracle_two_spheres_two_lines: need 2 + 2");
    OracleResult out;
    auto ns = detail::incidence_matrix(lines).nullspace();
    if (ns.size() != 4) {
        out.infinitely_many = true;
        return out;
    }
    // Affine charts of the candidate 3-space: pick one basis vector as the
    // affine origin and shear the others, moving the plane at infinity.
    struct Chart {
        int aff;
        long t0, t1, t2;
    };
    std::vector<Chart> charts;
    static const long shifts[][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                     {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
                                     {2, 1, 0}, {1, 2, 3}};
    for (int aff = 0; aff < 4; ++aff)
        for (const auto& sh : shifts) charts.push_back({aff, sh[0], sh[1], sh[2]});

    bool saw_infinite = false;
    for (const auto& ch : charts) {
        std::array<std::vector<Rat>, 3> span;
        std::vector<Rat> origin = ns[ch.aff];
        long tt[3] = {ch.t0, ch.t1, ch.t2};
        int w = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == ch.aff) continue;
            span[w] = ns[j];
            for (int i = 0; i < 6; ++i) span[w][i] = span[w][i] + Rat(tt[w]) * origin[i];
            ++w;
        }
        // Exactness of the chart: the three forms restricted to the plane at
        // infinity must have no common projective zero.
        const char* pv[3] = {"v1", "v2", "v3"};
        std::array<MPoly, 6> qi;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 3; ++j)
                qi[i] = qi[i] + MPoly::constant(span[j][i]) * MPoly::variable(pv[j]);
        MPoly I0 = detail::plk_rel_mpoly(qi);
        MPoly I1 = detail::tangency_mpoly6(qi, spheres[0]);
        MPoly I2 = detail::tangency_mpoly6(qi, spheres[1]);
        if (I0.is_zero() || I1.is_zero() || I2.is_zero()) continue;
        bool clear = true;
        try {
            auto inf = detail::solve_homogeneous_pair_p2(I0, I1);
            if (inf.infinitely_many) {
                clear = false;
            } else {
                for (const auto& br : inf.branches) {
                    detail::ModF m{br.factor};
                    UPoly acc = detail::mpoly_eval_mod(
                        I2,
                        {{"v1", br.coords[0]}, {"v2", br.coords[1]}, {"v3", br.coords[2]}},
                        m);
                    if (acc.is_zero() || UPoly::gcd(acc, br.factor).degree() > 0) {
                        clear = false;
                        break;
                    }
                }
            }
        } catch (const NonGenericError&) {
            clear = false;
        }
        if (!clear) continue;

        const char* av[3] = {"x", "y", "z"};
        std::array<MPoly, 6> qa;
        for (int i = 0; i < 6; ++i) {
            qa[i] = MPoly::constant(origin[i]);
            for (int j = 0; j < 3; ++j)
                qa[i] = qa[i] + MPoly::constant(span[j][i]) * MPoly::variable(av[j]);
        }
        MPoly A = detail::plk_rel_mpoly(qa);
        MPoly B = detail::tangency_mpoly6(qa, spheres[0]);
        MPoly C = detail::tangency_mpoly6(qa, spheres[1]);
        detail::TripleSolve ts;
        try {
            ts = detail::solve_triple(A, B, C, "x", "y", "z");
        } catch (const std::logic_error&) {
            continue;
        }
        if (ts.infinitely_many) {
            saw_infinite = true;
            continue;  // may be an elimination artifact; try another chart
        }
        out.complex_count_with_multiplicity = (int)ts.complex_count;
        for (const auto& sol : ts.sols) {
            detail::ModF m{sol.factor};
            PlueckerSolution psol;
            psol.modulus = sol.factor;
            psol.alpha = sol.alpha;
            for (int i = 0; i < 6; ++i) {
                UPoly acc = UPoly::constant(origin[i]);
                acc = acc + span[0][i] * sol.x + span[1][i] * sol.y + span[2][i] * sol.z;
                psol.plk[i] = m.reduce(acc);
            }
            psol.multiplicity = sol.multiplicity;
            bool at_infinity = true;
            for (int i = 0; i < 3 && at_infinity; ++i)
                at_infinity = psol.alpha.sign_at(psol.plk[i]) == 0;
            if (at_infinity)
                out.complex_count_with_multiplicity -= psol.multiplicity;
            else
                out.solutions.push_back(std::move(psol));
        }
        return out;
    }
    if (saw_infinite) {
        out.infinitely_many = true;
        return out;
    }
    throw NonGenericError("no exact chart for the two-two line-space system");
}

// Cross-check route for three spheres and one line. The full line-space
// version (four quadrics in P^4) is beyond the elimination machinery here, so
// this route solves the same tangency system with the elimination transposed:
// the chart coordinates of the direction are eliminated by resultants and
// recovered last, while t drives the bivariate solve. Eliminants, branch
// moduli and recovered coordinate functions are all different from the
// forward route; only the chart-at-infinity certificate is shared.
inline OracleResult tangent_oracle_three_spheres_one_line(const std::vector<Sphere>& spheres,
                                                          const LineR3& line) {
    if (spheres.size() != 3)
        throw std::invalid_argument("tangent_oracle_three_spheres_one_line: need 3 spheres");
    OracleResult out;
    auto sys = detail::one_line_three_spheres_system(spheres, line);
    if (sys.S12.is_zero() || sys.S13.is_zero()) {
        out.infinitely_many = true;
        return out;
    }
    auto charts = detail::dir_charts();
    std::reverse(charts.begin(), charts.end());  // prefer a different chart
    bool saw_infinite = false;
    for (const auto& ch : charts) {
        if (!detail::infinity_clear(sys.S12, sys.S13, ch)) continue;
        detail::TripleSolve ts;
        try {
            ts = detail::solve_triple(ch.affine(sys.F[0]), ch.affine(sys.F[1]),
                                      ch.affine(sys.F[2]), "t", "x", "y");
        } catch (const std::logic_error&) {
            continue;
        }
        if (ts.infinitely_many) {
            saw_infinite = true;
            continue;
        }
        out.complex_count_with_multiplicity = (int)ts.complex_count;
        for (const auto& sol : ts.sols) {
            detail::ModF m{sol.factor};
            // Here sol.x is the t value; sol.y, sol.z are the chart coords.
            detail::UVec3 base;
            for (int i = 0; i < 3; ++i)
                base[i] =
                    m.reduce(UPoly::constant(line.base[i]) + line.direction[i] * sol.x);
            auto dir = ch.dir_fns(sol.y, sol.z, m);
            auto mom = detail::uvec_cross(base, dir, m);
            PlueckerSolution psol;
            psol.modulus = sol.factor;
            psol.alpha = sol.alpha;
            psol.plk = {dir[0], dir[1], dir[2], mom[2], m.reduce(-mom[1]), mom[0]};
            psol.multiplicity = sol.multiplicity;
            out.solutions.push_back(std::move(psol));
        }
        return out;
    }
    if (saw_infinite) {
        out.infinitely_many = true;
        return out;
    }
    throw NonGenericError("no exact chart for the three-sphere one-line cross-check");
}

}  // namespace linetan
