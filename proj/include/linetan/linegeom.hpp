#pragma once

#include <array>

#include "linetan/mpoly.hpp"
#include "linetan/vec.hpp"

namespace linetan {

// Homogeneous point (x0, x1, x2, x3); affine points lift as (1, x, y, z).
using HPoint = std::array<Rat, 4>;

inline HPoint lift(const Point3& p) { return {Rat(1), p.x, p.y, p.z}; }
inline HPoint at_infinity(const Vec3& v) { return {Rat(0), v.x, v.y, v.z}; }

// A line in R3 as base point plus nonzero direction.
struct LineR3 {
    Point3 base;
    Vec3 direction;

    LineR3(Point3 b, Vec3 d) : base(std::move(b)), direction(std::move(d)) {
        if (direction.is_zero())
            throw std::invalid_argument("LineR3: zero direction");
    }

    Point3 at(const Rat& t) const { return base + direction * t; }
};

// Plücker coordinates (p01, p02, p03, p12, p13, p23) with p_ij = x_i y_j - x_j y_i
// for two spanning homogeneous points x, y. Index order is normative here and
// everywhere downstream: (p01, p02, p03) is the direction part for affine lines,
// (p12, p13, p23) the moment part.
struct PlueckerLine {
    std::array<Rat, 6> p;  // p01, p02, p03, p12, p13, p23

    const Rat& operator[](int i) const { return p[i]; }

    // p01*p23 - p02*p13 + p03*p12, identically zero for any actual line.
    Rat pluecker_relation() const {
        return p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
    }

    bool proportional_to(const PlueckerLine& o) const {
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (p[i] * o.p[j] != p[j] * o.p[i]) return false;
        return true;
    }

    // Affine lines have a nonzero direction part.
    bool at_infinity_line() const {
        return sgn(p[0]) == 0 && sgn(p[1]) == 0 && sgn(p[2]) == 0;
    }
};

inline PlueckerLine pluecker_from_points(const HPoint& a, const HPoint& b) {
    PlueckerLine l;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            l.p[k++] = a[i] * b[j] - a[j] * b[i];
    bool all0 = true;
    for (auto& q : l.p) all0 &= (sgn(q) == 0);
    if (all0) throw std::invalid_argument("pluecker_from_points: proportional points");
    if (sgn(l.pluecker_relation()) != 0)
        throw std::logic_error("pluecker_from_points: relation violated");
    return l;
}

inline PlueckerLine to_pluecker(const LineR3& l) {
    return pluecker_from_points(lift(l.base), at_infinity(l.direction));
}

// Bilinear incidence form; zero iff the two lines meet (possibly at infinity).
inline Rat incidence_form(const PlueckerLine& l, const PlueckerLine& m) {
    return l.p[0] * m.p[5] - l.p[1] * m.p[4] + l.p[2] * m.p[3] +
           l.p[3] * m.p[2] - l.p[4] * m.p[1] + l.p[5] * m.p[0];
}

inline bool lines_meet(const LineR3& a, const LineR3& b) {
    return sgn(incidence_form(to_pluecker(a), to_pluecker(b))) == 0;
}

inline bool same_line(const LineR3& a, const LineR3& b) {
    return to_pluecker(a).proportional_to(to_pluecker(b));
}

struct Sphere {
    Point3 center;
    Rat radius_squared;

    Sphere(Point3 c, Rat r2) : center(std::move(c)), radius_squared(std::move(r2)) {
        if (sgn(radius_squared) <= 0)
            throw std::invalid_argument("Sphere: radius_squared must be positive");
    }
};

// Symmetric 4x4 rational matrix, modulo scale.
struct Quadric {
    std::array<std::array<Rat, 4>, 4> q{};

    static Quadric from_sphere(const Sphere& s) {
        // x^T Q x = |x - c|^2 - r^2 on affine lifts.
        Quadric Q;
        const Point3& c = s.center;
        Q.q[0][0] = norm2(c) - s.radius_squared;
        for (int i = 0; i < 3; ++i) {
            Q.q[0][i + 1] = Q.q[i + 1][0] = -c[i];
            Q.q[i + 1][i + 1] = 1;
        }
        return Q;
    }

    Rat eval(const HPoint& x) const {
        Rat acc(0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc += q[i][j] * x[i] * x[j];
        return acc;
    }

    // Restriction to a parametrized line: quadratic polynomial in t.
    UPoly eval_on_line(const LineR3& l) const {
        HPoint p = lift(l.base), v = at_infinity(l.direction);
        Rat a(0), b(0), c(0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                c += q[i][j] * p[i] * p[j];
                b += q[i][j] * (p[i] * v[j] + v[i] * p[j]);
                a += q[i][j] * v[i] * v[j];
            }
        return UPoly::of({c, b, a});
    }

    bool is_zero() const {
        for (auto& row : q)
            for (auto& e : row)
                if (sgn(e) != 0) return false;
        return true;
    }
};

// 6x6 matrix of 2x2 minors of Q, indexed like the Plücker order:
// row/col r <-> pair (i_r, j_r) in ((0,1),(0,2),(0,3),(1,2),(1,3),(2,3));
// entry(r, s) = Q[i_r][i_s]*Q[j_r][j_s] - Q[i_r][j_s]*Q[j_r][i_s].
inline std::array<std::array<Rat, 6>, 6> wedge2(const Quadric& Q) {
    static constexpr int pr[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    std::array<std::array<Rat, 6>, 6> W;
    for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s) {
            int i = pr[r][0], j = pr[r][1], k = pr[s][0], l = pr[s][1];
            W[r][s] = Q.q[i][k] * Q.q[j][l] - Q.q[i][l] * Q.q[j][k];
        }
    return W;
}

// p^T (wedge2 Q) p for the sphere's quadric: zero iff tangent, negative iff
// the line meets the open ball, positive iff disjoint. With the point-built
// Plücker convention above this equals tangency_form_affine exactly.
inline Rat tangency_form(const PlueckerLine& l, const Sphere& s) {
    auto W = wedge2(Quadric::from_sphere(s));
    Rat acc(0);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) acc += W[r][c] * l.p[r] * l.p[c];
    return acc;
}

// [(c - p) x v]^2 - r^2 v^2; same vanishing locus and sign as tangency_form.
inline Rat tangency_form_affine(const LineR3& l, const Sphere& s) {
    Vec3 w = cross(s.center - l.base, l.direction);
    return norm2(w) - s.radius_squared * norm2(l.direction);
}

// The unique quadric through three pairwise skew lines (three points per line
// give nine linear conditions on the ten coefficients).
inline Quadric quadric_through_three_lines(const LineR3& l1, const LineR3& l2,
                                           const LineR3& l3) {
    const LineR3* ls[3] = {&l1, &l2, &l3};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (lines_meet(*ls[i], *ls[j]))
                throw std::invalid_argument("quadric_through_three_lines: lines not skew");
    // Unknown order: q00, q01, q02, q03, q11, q12, q13, q22, q23, q33.
    static constexpr int idx[10][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1},
                                       {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}};
    Mat m(9, 10);
    int row = 0;
    for (auto* l : ls)
        for (long t : {0L, 1L, -1L}) {
            HPoint x = lift(l->at(Rat(t)));
            for (int c = 0; c < 10; ++c) {
                int i = idx[c][0], j = idx[c][1];
                m(row, c) = Rat(i == j ? 1 : 2) * x[i] * x[j];
            }
            ++row;
        }
    auto ns = m.nullspace();
    if (ns.size() != 1)
        throw std::logic_error("quadric_through_three_lines: containment not unique");
    Quadric Q;
    for (int c = 0; c < 10; ++c) {
        int i = idx[c][0], j = idx[c][1];
        Q.q[i][j] = Q.q[j][i] = ns[0][c];
    }
    // Three points of a line on a quadric force the whole line onto it.
    for (auto* l : ls)
        if (!Q.eval_on_line(*l).is_zero())
            throw std::logic_error("quadric_through_three_lines: line not contained");
    return Q;
}

}  // namespace linetan
