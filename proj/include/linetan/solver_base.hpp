#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linetan/algline.hpp"

namespace linetan {

struct DuplicateLineError : std::invalid_argument {
    DuplicateLineError() : std::invalid_argument("duplicate line in configuration") {}
};
struct DuplicateSphereError : std::invalid_argument {
    DuplicateSphereError() : std::invalid_argument("duplicate sphere in configuration") {}
};
struct DegenerateCentersError : std::invalid_argument {
    explicit DegenerateCentersError(const std::string& w) : std::invalid_argument(w) {}
};
struct NonGenericError : std::runtime_error {
    explicit NonGenericError(const std::string& w) : std::runtime_error(w) {}
};

// k spheres and 4-k lines.
struct Configuration {
    std::vector<Sphere> spheres;
    std::vector<LineR3> lines;
    int k() const { return (int)spheres.size(); }

    void validate() const {
        if (spheres.size() + lines.size() != 4)
            throw std::invalid_argument("Configuration: need |spheres| + |lines| = 4");
        for (size_t i = 0; i < lines.size(); ++i)
            for (size_t j = i + 1; j < lines.size(); ++j)
                if (same_line(lines[i], lines[j])) throw DuplicateLineError();
        for (size_t i = 0; i < spheres.size(); ++i)
            for (size_t j = i + 1; j < spheres.size(); ++j)
                if (spheres[i].center == spheres[j].center &&
                    spheres[i].radius_squared == spheres[j].radius_squared)
                    throw DuplicateSphereError();
    }
};

// The geometrically meaningful solution bound after excess removal.
inline int bezout_bound(int k) {
    switch (k) {
        case 0: return 2;
        case 1: return 4;
        case 2: return 8;
        case 3: return 12;
        case 4: return 12;
    }
    throw std::invalid_argument("bezout_bound: k out of range");
}

struct SolveReport {
    std::vector<AlgLine> solutions;
    int real_count_with_multiplicity = 0;
    int complex_count_with_multiplicity = 0;
    int bound = 0;
    bool generic = false;
    bool infinitely_many = false;
    std::string degenerate_family;  // nonempty when infinitely_many
    std::vector<UPoly> rejected_factors;

    void finalize(int k) {
        bound = bezout_bound(k);
        real_count_with_multiplicity = 0;
        bool all_simple = true;
        for (const auto& s : solutions) {
            real_count_with_multiplicity += s.multiplicity;
            all_simple &= (s.multiplicity == 1);
        }
        generic = !infinitely_many && complex_count_with_multiplicity == bound && all_simple;
    }

    // Deterministic order: refine every solution and sort by approximate
    // normalized direction then base point.
    void sort_canonical() {
        Rat eps = make_rat(1, 1);
        for (int i = 0; i < 30; ++i) eps /= 1000;  // 1e-90
        auto key = [&](const AlgLine& l) {
            Vec3 d = l.approx_dir(eps), b = l.approx_base(eps);
            // Scale-normalize the direction approximation.
            Rat mx(0);
            for (int i = 0; i < 3; ++i) mx = std::max(mx, rat_abs(d[i]));
            int lead = 0;
            while (lead < 3 && sgn(d[lead]) == 0) ++lead;
            Rat s = (lead < 3 && sgn(d[lead]) < 0) ? -mx : mx;
            if (sgn(s) != 0) d = d / s;
            return std::array<Rat, 6>{d.x, d.y, d.z, b.x, b.y, b.z};
        };
        std::stable_sort(solutions.begin(), solutions.end(),
                         [&](const AlgLine& a, const AlgLine& b) { return key(a) < key(b); });
    }
};

namespace detail {

// Line through point x meeting both skew-from-x lines a and b: intersection of
// the planes spanned by x with each line. Empty when x lies on either line or
// the planes are parallel (no such transversal in the generic sense).
inline std::optional<LineR3> line_through_point_meeting_two(const Point3& x,
                                                            const LineR3& a,
                                                            const LineR3& b) {
    Vec3 na = cross(a.base - x, a.direction);
    Vec3 nb = cross(b.base - x, b.direction);
    if (na.is_zero() || nb.is_zero()) return std::nullopt;
    Vec3 d = cross(na, nb);
    if (d.is_zero()) return std::nullopt;
    LineR3 t(x, d);
    // The plane construction guarantees coplanarity with each target; reject
    // the parallel-no-intersection cases by an exact incidence check.
    if (!lines_meet(t, a) || !lines_meet(t, b)) return std::nullopt;
    return t;
}

// Intersection point of two coplanar non-parallel lines.
inline std::optional<Point3> intersect_lines(const LineR3& a, const LineR3& b) {
    // a.base + t a.dir = b.base + u b.dir; solve the overdetermined 3x2 system.
    Mat m(3, 2);
    std::vector<Rat> rhs(3);
    for (int i = 0; i < 3; ++i) {
        m(i, 0) = a.direction[i];
        m(i, 1) = -b.direction[i];
        rhs[i] = b.base[i] - a.base[i];
    }
    auto sol = m.solve(rhs);
    if (!sol) return std::nullopt;
    if (parallel(a.direction, b.direction)) return std::nullopt;
    return a.at((*sol)[0]);
}

// Intersection of a line with the plane through p with normal n; nullopt when
// parallel (including contained).
inline std::optional<Point3> intersect_line_plane(const LineR3& l, const Point3& p,
                                                  const Vec3& n) {
    Rat den = dot(l.direction, n);
    if (sgn(den) == 0) return std::nullopt;
    Rat t = dot(p - l.base, n) / den;
    return l.at(t);
}

}  // namespace detail

// Transversals to four lines. Generic path: quadric through three skew lines,
// restricted to the fourth line; degenerate inputs are decomposed, not rejected.
inline SolveReport transversals_four_lines(const std::vector<LineR3>& lines) {
    if (lines.size() != 4) throw std::invalid_argument("transversals_four_lines: need 4 lines");
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = i + 1; j < 4; ++j)
            if (same_line(lines[i], lines[j])) throw DuplicateLineError();

    SolveReport rep;

    // Prefer a pairwise skew triple; the left-out line becomes the probe.
    int probe = -1;
    for (int out = 3; out >= 0 && probe < 0; --out) {
        bool skew = true;
        for (int i = 0; i < 4 && skew; ++i)
            for (int j = i + 1; j < 4 && skew; ++j)
                if (i != out && j != out && lines_meet(lines[i], lines[j])) skew = false;
        if (skew) probe = out;
    }

    if (probe >= 0) {
        const LineR3* tri[3];
        int t = 0;
        for (int i = 0; i < 4; ++i)
            if (i != probe) tri[t++] = &lines[i];
        const LineR3& l4 = lines[probe];
        Quadric Q = quadric_through_three_lines(*tri[0], *tri[1], *tri[2]);
        UPoly q = Q.eval_on_line(l4);
        if (q.is_zero()) {
            // l4 lies on the quadric: in the same ruling as the triple it is
            // skew to them and every transversal-ruling line meets all four.
            if (!lines_meet(l4, *tri[0])) {
                rep.infinitely_many = true;
                rep.degenerate_family = "fourth line lies in the ruling of the other three";
                rep.finalize(0);
                return rep;
            }
            // l4 is in the transversal ruling: it is itself the only line
            // meeting all four (other transversal-ruling lines are skew to it).
            rep.solutions.push_back(AlgLine::from_rational(l4, 2));
            rep.complex_count_with_multiplicity = 2;
            rep.finalize(0);
            rep.generic = false;
            return rep;
        }
        rep.complex_count_with_multiplicity = 2;
        // Roots of q give the points where l4 pierces the quadric; the
        // transversal is the opposite-ruling line through each.
        for (const auto& iv : isolate_real_roots(q)) {
            AlgReal t0 = AlgReal::from_interval(squarefree_part(q), iv);
            if (t0.is_rational()) {
                Point3 x = l4.at(t0.rational());
                // The two-plane construction fails when x lies on one of the
                // pair; some pair avoids that (x is on at most one line).
                std::optional<LineR3> tl;
                for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
                    tl = detail::line_through_point_meeting_two(x, *tri[i], *tri[j]);
                    if (tl) break;
                }
                if (!tl) throw NonGenericError("transversal construction degenerate");
                for (const auto& l : lines)
                    if (!same_line(*tl, l) && !lines_meet(*tl, l))
                        throw NonGenericError("transversal certification failed");
                rep.solutions.push_back(AlgLine::from_rational(*tl, iv.multiplicity));
            } else {
                // Build the coordinate functions of the transversal mod the
                // minimal polynomial of t0, certified at this specific root:
                // nonzero direction and all four incidences vanishing.
                detail::ModF m{squarefree_part(q)};
                detail::UVec3 x = detail::uvec_const(l4.base);
                for (int i = 0; i < 3; ++i) x[i] = x[i] + l4.direction[i] * UPoly::x();
                bool placed = false;
                for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
                    auto na = detail::uvec_cross(
                        detail::uvec_sub(detail::uvec_const(tri[i]->base), x),
                        detail::uvec_const(tri[i]->direction), m);
                    auto nb = detail::uvec_cross(
                        detail::uvec_sub(detail::uvec_const(tri[j]->base), x),
                        detail::uvec_const(tri[j]->direction), m);
                    AlgLine sol;
                    sol.modulus = m.F;
                    sol.alpha = t0;
                    sol.base = x;
                    sol.dir = detail::uvec_cross(na, nb, m);
                    sol.multiplicity = iv.multiplicity;
                    if (sol.sign_at(detail::uvec_dot(sol.dir, sol.dir, m)) <= 0) continue;
                    bool ok = true;
                    for (const auto& l : lines) ok &= (sol.incidence_sign(l) == 0);
                    if (!ok) continue;
                    rep.solutions.push_back(std::move(sol));
                    placed = true;
                    break;
                }
                if (!placed) throw NonGenericError("transversal construction degenerate");
            }
        }
        // Degree drop means one pierce point at infinity: a transversal
        // parallel to l4 through the quadric point at infinity.
        if (q.degree() < 2) {
            // Lines with direction l4.direction meeting tri[0] and tri[1]:
            // pick the point on tri[0] where the plane through tri[1] with
            // that direction crosses it.
            Vec3 n = cross(tri[1]->direction, l4.direction);
            auto x = detail::intersect_line_plane(*tri[0], tri[1]->base, n);
            if (x) {
                LineR3 cand(*x, l4.direction);
                bool ok = true;
                for (const auto& l : lines)
                    ok &= (same_line(cand, l) || lines_meet(cand, l));
                if (ok)
                    rep.solutions.push_back(AlgLine::from_rational(cand, 2 - q.degree()));
            }
        }
        rep.finalize(0);
        return rep;
    }

    // No skew triple: some pair meets. Decompose transversals to that pair
    // into the pencil through the intersection point and the in-plane family.
    int ia = -1, ib = -1;
    for (int i = 0; i < 4 && ia < 0; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (lines_meet(lines[i], lines[j]) &&
                !parallel(lines[i].direction, lines[j].direction)) {
                ia = i; ib = j;
                break;
            }
    if (ia < 0)
        throw NonGenericError("transversals_four_lines: parallel-only degeneracy unsupported");
    auto p = detail::intersect_lines(lines[ia], lines[ib]);
    if (!p) throw std::logic_error("transversals_four_lines: lost intersection point");
    Vec3 h = cross(lines[ia].direction, lines[ib].direction);  // common plane normal
    const LineR3* rest[2];
    int rr = 0;
    for (int i = 0; i < 4; ++i)
        if (i != ia && i != ib) rest[rr++] = &lines[i];

    // Infinite families: a remaining line through p, or contained in the plane.
    for (auto* l : rest) {
        bool through_p = cross(l->base - *p, l->direction).is_zero() ||
                         (parallel(cross(l->base - *p, l->direction), Vec3()) && false);
        if (cross(l->base - *p, l->direction).is_zero()) through_p = true;
        bool in_plane = sgn(dot(l->base - *p, h)) == 0 && sgn(dot(l->direction, h)) == 0;
        if (through_p || in_plane) {
            rep.infinitely_many = true;
            rep.degenerate_family = "remaining line meets the pencil family everywhere";
            rep.finalize(0);
            return rep;
        }
    }

    std::vector<LineR3> found;
    // Pencil family: the line through p meeting both remaining lines.
    if (auto tl = detail::line_through_point_meeting_two(*p, *rest[0], *rest[1]))
        found.push_back(*tl);
    // In-plane family: the line joining the plane piercings of the remaining lines.
    auto q3 = detail::intersect_line_plane(*rest[0], *p, h);
    auto q4 = detail::intersect_line_plane(*rest[1], *p, h);
    if (q3 && q4 && !(*q3 == *q4)) {
        LineR3 cand(*q3, *q4 - *q3);
        bool ok = true;
        for (const auto& l : lines) ok &= (same_line(cand, l) || lines_meet(cand, l));
        if (ok) found.push_back(cand);
    }
    // Merge duplicates across the two families.
    if (found.size() == 2 && same_line(found[0], found[1])) {
        found.pop_back();
        rep.solutions.push_back(AlgLine::from_rational(found[0], 2));
    } else {
        for (const auto& l : found) rep.solutions.push_back(AlgLine::from_rational(l, 1));
    }
    rep.complex_count_with_multiplicity = 2;
    rep.finalize(0);
    rep.generic = false;  // meeting-lines input is never generic
    return rep;
}

}  // namespace linetan
