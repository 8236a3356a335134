#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linetan/oracle.hpp"
#include "linetan/solver_base.hpp"

using namespace linetan;

namespace {
std::mt19937 rng(52318);
Rat rrat(int lo = -6, int hi = 6) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 4);
    return make_rat(num(rng), den(rng));
}
Vec3 rvec() { return {rrat(), rrat(), rrat()}; }
Vec3 rdir() {
    Vec3 v = rvec();
    while (v.is_zero()) v = rvec();
    return v;
}
LineR3 rline() { return LineR3(rvec(), rdir()); }

void certify_against_lines(const SolveReport& rep, const std::vector<LineR3>& lines) {
    for (const auto& sol : rep.solutions)
        for (const auto& l : lines) CHECK(sol.incidence_sign(l) == 0);
}
}  // namespace

TEST_CASE("four lines: grid ruling degeneracies") {
    auto g = [](long i) {
        return LineR3({Rat(0), Rat(i), Rat(0)}, {Rat(1), Rat(0), Rat(i)});
    };
    auto h = [](long j) {
        return LineR3({Rat(j), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(j)});
    };
    // Four lines in one ruling of z = xy: every opposite-ruling line meets all.
    auto rep = transversals_four_lines({g(1), g(2), g(3), g(5)});
    CHECK(rep.infinitely_many);
    CHECK(!rep.degenerate_family.empty());
    CHECK(rep.solutions.empty());

    // Three lines of one ruling plus one of the other: the fourth line itself
    // is the unique common transversal.
    auto rep2 = transversals_four_lines({g(1), g(2), g(3), h(2)});
    CHECK(!rep2.infinitely_many);
    REQUIRE(rep2.solutions.size() == 1);
    CHECK(rep2.solutions[0].multiplicity == 2);
    CHECK(rep2.complex_count_with_multiplicity == 2);
    CHECK(!rep2.generic);
    CHECK(same_line(rep2.solutions[0].to_rational(), h(2)));
}

TEST_CASE("four lines: meeting pair decomposes into two families") {
    LineR3 xaxis({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    LineR3 yaxis({Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    LineR3 g1({Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(1)});
    LineR3 h1({Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(1)});
    std::vector<LineR3> lines{xaxis, yaxis, g1, h1};
    auto rep = transversals_four_lines(lines);
    REQUIRE(rep.solutions.size() == 2);
    CHECK(rep.complex_count_with_multiplicity == 2);
    CHECK(!rep.generic);
    certify_against_lines(rep, lines);
    // The in-plane member joins (0,1,0) and (1,0,0).
    LineR3 join({Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(-1), Rat(0)});
    bool seen = false;
    for (const auto& s : rep.solutions) seen |= same_line(s.to_rational(), join);
    CHECK(seen);
}

TEST_CASE("four lines: rational double transversal") {
    // Symmetric configuration with a repeated root: the quadric through three
    // lines is tangent to the fourth.
    auto g = [](long i) {
        return LineR3({Rat(0), Rat(i), Rat(0)}, {Rat(1), Rat(0), Rat(i)});
    };
    // Probe tangent to z = xy: along the tangent plane at (0, 0, 0) the line
    // x = y touches the surface only there.
    LineR3 probe({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(1), Rat(0)});
    std::vector<LineR3> lines{g(1), g(2), g(3), probe};
    auto rep = transversals_four_lines(lines);
    REQUIRE(rep.solutions.size() == 1);
    CHECK(rep.solutions[0].multiplicity == 2);
    CHECK(rep.complex_count_with_multiplicity == 2);
    CHECK(!rep.generic);
    certify_against_lines(rep, lines);
    auto orc = transversal_oracle(lines);
    CHECK(oracle_agrees(rep, orc));
}

TEST_CASE("four lines: random quadruples agree with the line-space route") {
    int generic_seen = 0, with_two_real = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<LineR3> lines;
        while (lines.size() < 4) {
            LineR3 c = rline();
            bool ok = true;
            for (const auto& l : lines) ok &= !same_line(l, c);
            if (ok) lines.push_back(c);
        }
        SolveReport rep;
        try {
            rep = transversals_four_lines(lines);
        } catch (const NonGenericError&) {
            continue;
        }
        auto orc = transversal_oracle(lines);
        CHECK(oracle_agrees(rep, orc));
        if (rep.infinitely_many) continue;
        CHECK(rep.complex_count_with_multiplicity == 2);
        CHECK(rep.real_count_with_multiplicity <= 2);
        CHECK(rep.real_count_with_multiplicity % 2 == 0);
        CHECK(rep.bound == bezout_bound(0));
        certify_against_lines(rep, lines);
        if (rep.generic) ++generic_seen;
        if (rep.real_count_with_multiplicity == 2) ++with_two_real;
    }
    CHECK(generic_seen > 50);
    CHECK(with_two_real > 20);
}

TEST_CASE("four lines: duplicate input rejected") {
    LineR3 a({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    LineR3 b({Rat(1), Rat(0), Rat(0)}, {Rat(-2), Rat(0), Rat(0)});
    LineR3 c({Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)});
    LineR3 d({Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)});
    CHECK_THROWS_AS((void)transversals_four_lines({a, b, c, d}), DuplicateLineError);
}

TEST_CASE("four lines: invariance under rigid motion and relabeling") {
    std::vector<LineR3> lines{
        LineR3({Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(1)}),
        LineR3({Rat(2), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(2)}),
        LineR3({Rat(1), Rat(1), Rat(3)}, {Rat(1), Rat(2), Rat(0)}),
        LineR3({Rat(0), Rat(0), Rat(1)}, {Rat(2), Rat(-1), Rat(1)})};
    auto base = transversals_four_lines(lines);
    REQUIRE(!base.infinitely_many);

    // Rational rotation (Pythagorean, axis z) plus translation.
    auto rot = [](const Vec3& v) {
        return Vec3{make_rat(3, 5) * v.x - make_rat(4, 5) * v.y,
                    make_rat(4, 5) * v.x + make_rat(3, 5) * v.y, v.z};
    };
    Vec3 shift{Rat(7), Rat(-2), Rat(5)};
    std::vector<LineR3> moved;
    for (const auto& l : lines) moved.emplace_back(Point3(rot(l.base) + shift), rot(l.direction));
    std::swap(moved[0], moved[2]);
    auto rep = transversals_four_lines(moved);
    CHECK(rep.complex_count_with_multiplicity == base.complex_count_with_multiplicity);
    CHECK(rep.real_count_with_multiplicity == base.real_count_with_multiplicity);
    CHECK(rep.generic == base.generic);
    // Each transformed solution matches a motion of an original one.
    for (const auto& s : base.solutions) {
        bool hit = false;
        for (auto& t : rep.solutions) {
            AlgLine moved_s = s;
            auto m = moved_s.ctx();
            detail::UVec3 nb, nd;
            // Apply the motion to the coordinate functions.
            nb[0] = m.reduce(make_rat(3, 5) * s.base[0] - make_rat(4, 5) * s.base[1] +
                             UPoly::constant(shift.x));
            nb[1] = m.reduce(make_rat(4, 5) * s.base[0] + make_rat(3, 5) * s.base[1] +
                             UPoly::constant(shift.y));
            nb[2] = m.reduce(s.base[2] + UPoly::constant(shift.z));
            nd[0] = m.reduce(make_rat(3, 5) * s.dir[0] - make_rat(4, 5) * s.dir[1]);
            nd[1] = m.reduce(make_rat(4, 5) * s.dir[0] + make_rat(3, 5) * s.dir[1]);
            nd[2] = s.dir[2];
            moved_s.base = nb;
            moved_s.dir = nd;
            if (moved_s.same_line_as(t)) hit = true;
        }
        CHECK(hit);
    }
}

#include "linetan/solver_spheres.hpp"

namespace {
std::vector<Sphere> tetra_spheres(const Rat& r2) {
    return {Sphere({Rat(2), Rat(2), Rat(0)}, r2), Sphere({Rat(2), Rat(0), Rat(2)}, r2),
            Sphere({Rat(0), Rat(2), Rat(2)}, r2), Sphere({Rat(0), Rat(0), Rat(0)}, r2)};
}

void certify_against_spheres(const SolveReport& rep, const std::vector<Sphere>& spheres) {
    for (const auto& sol : rep.solutions)
        for (const auto& s : spheres) CHECK(sol.tangency_sign(s) == 0);
}
}  // namespace

TEST_CASE("four spheres: regular tetrahedron radius sweep") {
    struct Row { Rat r2; int real; int nsol; int maxmult; };
    std::vector<Row> rows{
        {make_rat(199, 100), 0, 0, 0},
        {Rat(2), 12, 3, 4},
        {make_rat(3249, 1600), 12, 12, 1},
        {make_rat(9, 4), 12, 6, 2},
        {make_rat(23, 10), 0, 0, 0}};
    for (const auto& row : rows) {
        auto spheres = tetra_spheres(row.r2);
        auto rep = tangents_four_spheres(spheres);
        CHECK(rep.complex_count_with_multiplicity == 12);
        CHECK(rep.real_count_with_multiplicity == row.real);
        CHECK((int)rep.solutions.size() == row.nsol);
        int mm = 0;
        for (const auto& s : rep.solutions) mm = std::max(mm, s.multiplicity);
        CHECK(mm == row.maxmult);
        CHECK(rep.bound == 12);
        certify_against_spheres(rep, spheres);
    }
}

TEST_CASE("four spheres: distinct radii keep twelve tangents") {
    // Radii 1.4, 1.42, 1.45, 1.474 and 1.38 with three 1.44.
    std::vector<std::array<Rat, 4>> radii2{
        {make_rat(196, 100), make_rat(20164, 10000), make_rat(21025, 10000),
         make_rat(2172676, 1000000)},
        {make_rat(19044, 10000), make_rat(20736, 10000), make_rat(20736, 10000),
         make_rat(20736, 10000)}};
    Point3 centers[4] = {{Rat(2), Rat(2), Rat(0)}, {Rat(2), Rat(0), Rat(2)},
                         {Rat(0), Rat(2), Rat(2)}, {Rat(0), Rat(0), Rat(0)}};
    for (const auto& r2 : radii2) {
        std::vector<Sphere> spheres;
        for (int i = 0; i < 4; ++i) spheres.emplace_back(centers[i], r2[i]);
        auto rep = tangents_four_spheres(spheres);
        CHECK(rep.complex_count_with_multiplicity == 12);
        CHECK(rep.real_count_with_multiplicity == 12);
        CHECK(rep.solutions.size() == 12);
        CHECK(rep.generic);
        certify_against_spheres(rep, spheres);
    }
}

TEST_CASE("four spheres: coplanar demos stable across input precision") {
    for (int prec : {20, 40}) {
        Rat eps(1);
        for (int i = 0; i < prec; ++i) eps /= 10;
        Rat s3 = approx_sqrt(Rat(3), eps);
        std::vector<Sphere> tri{Sphere({Rat(1), Rat(0), Rat(0)}, make_rat(16, 25)),
                                Sphere({make_rat(-1, 2), s3 / 2, Rat(0)}, make_rat(16, 25)),
                                Sphere({make_rat(-1, 2), -s3 / 2, Rat(0)}, make_rat(16, 25)),
                                Sphere({Rat(0), Rat(0), Rat(0)}, make_rat(1, 9))};
        auto rep = tangents_four_spheres(tri);
        CHECK(rep.real_count_with_multiplicity == 12);
        CHECK(rep.complex_count_with_multiplicity == 12);
        certify_against_spheres(rep, tri);

        std::vector<Sphere> rhom{Sphere({Rat(0), Rat(0), Rat(0)}, make_rat(81, 100)),
                                 Sphere({Rat(2), Rat(0), Rat(0)}, make_rat(81, 100)),
                                 Sphere({Rat(1), s3, Rat(0)}, make_rat(81, 100)),
                                 Sphere({Rat(3), s3, Rat(0)}, make_rat(81, 100))};
        auto rep2 = tangents_four_spheres(rhom);
        CHECK(rep2.real_count_with_multiplicity == 8);
        CHECK(rep2.complex_count_with_multiplicity == 12);
        certify_against_spheres(rep2, rhom);
    }
}

TEST_CASE("four spheres: coplanar unit spheres never exceed eight tangents") {
    int solved = 0;
    while (solved < 12) {
        Point3 c[4];
        for (int i = 0; i < 4; ++i) c[i] = {rrat(), rrat(), Rat(0)};
        bool colinear = false, dup = false;
        for (int i = 0; i < 4 && !colinear; ++i)
            for (int j = i + 1; j < 4 && !colinear; ++j) {
                if (c[i] == c[j]) dup = true;
                for (int k = j + 1; k < 4; ++k)
                    if (cross(c[j] - c[i], c[k] - c[i]).is_zero()) colinear = true;
            }
        if (colinear || dup) continue;
        std::vector<Sphere> spheres;
        for (int i = 0; i < 4; ++i) spheres.emplace_back(c[i], Rat(1));
        SolveReport rep;
        try {
            rep = tangents_four_spheres(spheres);
        } catch (const NonGenericError&) {
            continue;
        }
        if (rep.infinitely_many) continue;
        CHECK(rep.real_count_with_multiplicity <= 8);
        certify_against_spheres(rep, spheres);
        ++solved;
    }
}

TEST_CASE("four spheres: random configurations respect the bound and parity") {
    int solved = 0;
    while (solved < 25) {
        std::vector<Sphere> spheres;
        for (int i = 0; i < 4; ++i) {
            Rat r2 = rrat(1, 6);
            while (sgn(r2) <= 0) r2 = rrat(1, 6);
            spheres.emplace_back(Point3{rrat(), rrat(), rrat()}, r2);
        }
        bool dup = false;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (spheres[i].center == spheres[j].center) dup = true;
        if (dup) continue;
        SolveReport rep;
        try {
            rep = tangents_four_spheres(spheres);
        } catch (const NonGenericError&) {
            continue;
        } catch (const DegenerateCentersError&) {
            continue;
        }
        if (rep.infinitely_many) continue;
        CHECK(rep.complex_count_with_multiplicity <= 12);
        CHECK(rep.real_count_with_multiplicity <= rep.complex_count_with_multiplicity);
        CHECK((rep.complex_count_with_multiplicity - rep.real_count_with_multiplicity) % 2 == 0);
        certify_against_spheres(rep, spheres);
        ++solved;
    }
}
