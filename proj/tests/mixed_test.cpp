#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linetan/oracle.hpp"
#include "linetan/solver_mixed.hpp"

using namespace linetan;

namespace {
std::mt19937 rng(90417);
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
Sphere rsphere() {
    Rat r2 = rrat(1, 9);
    while (sgn(r2) <= 0) r2 = rrat(1, 9);
    return Sphere{rvec(), r2};
}

void certify(const SolveReport& rep, const std::vector<Sphere>& spheres,
             const std::vector<LineR3>& lines) {
    for (const auto& sol : rep.solutions) {
        for (const auto& s : spheres) CHECK(sol.tangency_sign(s) == 0);
        for (const auto& l : lines) CHECK(sol.incidence_sign(l) == 0);
    }
}
}  // namespace

TEST_CASE("one sphere, three lines: two meeting pencils give four tangents") {
    // x-axis together with a vertical line through (2,0,0) and a y-parallel
    // line through (-2,0,0); unit sphere at the origin. Each pencil plane
    // contributes two tangents.
    LineR3 l1({Rat(2), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)});
    LineR3 l2({Rat(-2), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    LineR3 l3({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    Sphere s{{Rat(0), Rat(0), Rat(0)}, Rat(1)};
    std::vector<LineR3> lines{l1, l2, l3};
    auto rep = tangents_one_sphere_three_lines(s, lines);
    CHECK(!rep.infinitely_many);
    CHECK(rep.bound == 4);
    CHECK(rep.real_count_with_multiplicity == 4);
    CHECK(rep.complex_count_with_multiplicity == 4);
    REQUIRE(rep.solutions.size() == 4);
    certify(rep, {s}, lines);
    // Two tangents lie in the plane z = 0 (through the meeting point of l1
    // and l3... through (2,0,0) and the y-parallel line), two in y = 0.
    int in_z0 = 0, in_y0 = 0;
    for (const auto& sol : rep.solutions) {
        bool z0 = sol.sign_at(sol.base[2]) == 0 && sol.sign_at(sol.dir[2]) == 0;
        bool y0 = sol.sign_at(sol.base[1]) == 0 && sol.sign_at(sol.dir[1]) == 0;
        in_z0 += z0;
        in_y0 += y0;
    }
    CHECK(in_z0 == 2);
    CHECK(in_y0 == 2);
}

TEST_CASE("one sphere, three lines: random skew configurations") {
    int generic_seen = 0, with_real = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<LineR3> lines{rline(), rline(), rline()};
        bool skew = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                skew &= !lines_meet(lines[i], lines[j]) &&
                        !parallel(lines[i].direction, lines[j].direction);
        if (!skew) continue;
        Sphere s = rsphere();
        SolveReport rep;
        try {
            rep = tangents_one_sphere_three_lines(s, lines);
        } catch (const NonGenericError&) {
            continue;
        }
        if (rep.infinitely_many) continue;
        CHECK(rep.real_count_with_multiplicity <= 4);
        CHECK(rep.complex_count_with_multiplicity == 4);
        CHECK((rep.complex_count_with_multiplicity - rep.real_count_with_multiplicity) % 2 == 0);
        certify(rep, {s}, lines);
        generic_seen += rep.generic;
        with_real += rep.real_count_with_multiplicity > 0;
    }
    CHECK(generic_seen > 15);
    CHECK(with_real > 5);
}

TEST_CASE("one sphere, three lines: line-space route agrees") {
    LineR3 l1({Rat(2), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)});
    LineR3 l2({Rat(-2), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    LineR3 l3({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    Sphere s{{Rat(0), Rat(0), Rat(0)}, Rat(1)};
    std::vector<LineR3> lines{l1, l2, l3};
    auto rep = tangents_one_sphere_three_lines(s, lines);
    auto orc = tangent_oracle_one_sphere_three_lines(s, lines);
    CHECK(oracle_agrees(rep, orc));

    int agreed = 0, tried = 0;
    while (tried < 40) {
        std::vector<LineR3> ls{rline(), rline(), rline()};
        bool skew = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                skew &= !lines_meet(ls[i], ls[j]) && !parallel(ls[i].direction, ls[j].direction);
        if (!skew) continue;
        Sphere sp = rsphere();
        ++tried;
        SolveReport r;
        OracleResult o;
        try {
            r = tangents_one_sphere_three_lines(sp, ls);
            o = tangent_oracle_one_sphere_three_lines(sp, ls);
        } catch (const NonGenericError&) {
            continue;
        }
        bool ok = oracle_agrees(r, o);
        CHECK(ok);
        agreed += ok;
    }
    CHECK(agreed > 30);
}

TEST_CASE("two spheres, two lines: meeting lines give four plus four") {
    // Lines (t, 2-2t, 3t) and (t, 2+2t, -3t) meet at (0,2,0) and span the
    // plane 3y + 2z = 6; spheres of radius^2 = 5 at (+-2, 0, 0).
    LineR3 la({Rat(0), Rat(2), Rat(0)}, {Rat(1), Rat(-2), Rat(3)});
    LineR3 lb({Rat(0), Rat(2), Rat(0)}, {Rat(1), Rat(2), Rat(-3)});
    std::vector<Sphere> spheres{{{Rat(2), Rat(0), Rat(0)}, Rat(5)},
                                {{Rat(-2), Rat(0), Rat(0)}, Rat(5)}};
    std::vector<LineR3> lines{la, lb};
    auto rep = tangents_two_spheres_two_lines(spheres, lines);
    CHECK(!rep.infinitely_many);
    CHECK(rep.bound == 8);
    CHECK(rep.real_count_with_multiplicity == 8);
    CHECK(rep.complex_count_with_multiplicity == 8);
    REQUIRE(rep.solutions.size() == 8);
    certify(rep, spheres, lines);
    int through_p = 0, in_plane = 0;
    for (const auto& sol : rep.solutions) {
        // Through p: moment of (base - p, dir) vanishes.
        detail::ModF m{sol.modulus};
        detail::UVec3 rel = sol.base;
        rel[1] = m.reduce(rel[1] - UPoly::constant(Rat(2)));
        auto mom = detail::uvec_cross(rel, sol.dir, m);
        bool thru = sol.sign_at(mom[0]) == 0 && sol.sign_at(mom[1]) == 0 &&
                    sol.sign_at(mom[2]) == 0;
        // In plane 3y + 2z = 6.
        UPoly pb = m.reduce(Rat(3) * sol.base[1] + Rat(2) * sol.base[2] -
                            UPoly::constant(Rat(6)));
        UPoly pd = m.reduce(Rat(3) * sol.dir[1] + Rat(2) * sol.dir[2]);
        bool inpl = sol.sign_at(pb) == 0 && sol.sign_at(pd) == 0;
        through_p += thru;
        in_plane += inpl;
    }
    CHECK(through_p == 4);
    CHECK(in_plane == 4);
}

TEST_CASE("two spheres, two lines: random skew configurations") {
    int generic_seen = 0, with_real = 0, tried = 0;
    while (tried < 25) {
        std::vector<LineR3> lines{rline(), rline()};
        if (lines_meet(lines[0], lines[1]) ||
            parallel(lines[0].direction, lines[1].direction))
            continue;
        std::vector<Sphere> spheres{rsphere(), rsphere()};
        if (spheres[0].center == spheres[1].center &&
            spheres[0].radius_squared == spheres[1].radius_squared)
            continue;
        ++tried;
        SolveReport rep;
        try {
            rep = tangents_two_spheres_two_lines(spheres, lines);
        } catch (const NonGenericError&) {
            continue;
        }
        if (rep.infinitely_many) continue;
        CHECK(rep.real_count_with_multiplicity <= 8);
        CHECK(rep.complex_count_with_multiplicity <= 8);
        CHECK((rep.complex_count_with_multiplicity - rep.real_count_with_multiplicity) % 2 == 0);
        certify(rep, spheres, lines);
        generic_seen += rep.generic;
        with_real += rep.real_count_with_multiplicity > 0;
    }
    CHECK(generic_seen > 10);
    CHECK(with_real > 3);
}

TEST_CASE("two spheres, two lines: line-space route agrees") {
    LineR3 la({Rat(0), Rat(2), Rat(0)}, {Rat(1), Rat(-2), Rat(3)});
    LineR3 lb({Rat(0), Rat(2), Rat(0)}, {Rat(1), Rat(2), Rat(-3)});
    std::vector<Sphere> spheres{{{Rat(2), Rat(0), Rat(0)}, Rat(5)},
                                {{Rat(-2), Rat(0), Rat(0)}, Rat(5)}};
    std::vector<LineR3> lines{la, lb};
    auto rep = tangents_two_spheres_two_lines(spheres, lines);
    auto orc = tangent_oracle_two_spheres_two_lines(spheres, lines);
    CHECK(oracle_agrees(rep, orc));

    int agreed = 0, tried = 0;
    while (tried < 15) {
        std::vector<LineR3> ls{rline(), rline()};
        if (lines_meet(ls[0], ls[1]) || parallel(ls[0].direction, ls[1].direction))
            continue;
        std::vector<Sphere> sp{rsphere(), rsphere()};
        if (sp[0].center == sp[1].center && sp[0].radius_squared == sp[1].radius_squared)
            continue;
        ++tried;
        SolveReport r;
        OracleResult o;
        try {
            r = tangents_two_spheres_two_lines(sp, ls);
            o = tangent_oracle_two_spheres_two_lines(sp, ls);
        } catch (const NonGenericError&) {
            continue;
        }
        if (r.infinitely_many || o.infinitely_many) continue;
        bool ok = oracle_agrees(r, o);
        CHECK(ok);
        agreed += ok;
    }
    CHECK(agreed > 10);
}
