#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linetan/linegeom.hpp"

using namespace linetan;

namespace {
std::mt19937 rng(911203);
Rat rrat(int lo = -8, int hi = 8) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, 5);
    return make_rat(num(rng), den(rng));
}
Vec3 rvec() { return {rrat(), rrat(), rrat()}; }
Vec3 rdir() {
    Vec3 v = rvec();
    while (v.is_zero()) v = rvec();
    return v;
}
}  // namespace

TEST_CASE("pluecker coordinates from spanning points") {
    auto xaxis = pluecker_from_points({Rat(1), Rat(0), Rat(0), Rat(0)},
                                      {Rat(1), Rat(1), Rat(0), Rat(0)});
    CHECK(xaxis.p == std::array<Rat, 6>{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});

    auto xaxis2 = pluecker_from_points({Rat(1), Rat(0), Rat(0), Rat(0)},
                                       {Rat(0), Rat(1), Rat(0), Rat(0)});
    CHECK(xaxis.proportional_to(xaxis2));

    auto l = pluecker_from_points({Rat(1), Rat(0), Rat(0), Rat(1)},
                                  {Rat(1), Rat(0), Rat(1), Rat(1)});
    CHECK(sgn(l.pluecker_relation()) == 0);
    // Both points lie on the line: any line through either point meets l.
    for (int trial = 0; trial < 20; ++trial) {
        HPoint other = {Rat(1), rrat(), rrat(), rrat()};
        auto through_a = pluecker_from_points({Rat(1), Rat(0), Rat(0), Rat(1)}, other);
        auto through_b = pluecker_from_points({Rat(1), Rat(0), Rat(1), Rat(1)}, other);
        CHECK(sgn(incidence_form(l, through_a)) == 0);
        CHECK(sgn(incidence_form(l, through_b)) == 0);
    }

    CHECK_THROWS(pluecker_from_points({Rat(1), Rat(2), Rat(3), Rat(4)},
                                      {Rat(2), Rat(4), Rat(6), Rat(8)}));
}

TEST_CASE("incidence form") {
    LineR3 xaxis({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    LineR3 yaxis({Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    LineR3 above({Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)});
    auto px = to_pluecker(xaxis);
    CHECK(sgn(incidence_form(px, px)) == 0);
    CHECK(sgn(incidence_form(px, to_pluecker(yaxis))) == 0);

    Rat f = incidence_form(px, to_pluecker(above));
    CHECK(sgn(f) != 0);
    // Sign matches det of the four spanning points in order.
    Mat m(4, 4);
    HPoint rows[4] = {lift(xaxis.base), at_infinity(xaxis.direction),
                      lift(above.base), at_infinity(above.direction)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
    CHECK(sgn(f) == sgn(m.det()));

    // Symmetric and bilinear under rescaling.
    for (int trial = 0; trial < 50; ++trial) {
        LineR3 a(rvec(), rdir()), b(rvec(), rdir());
        auto pa = to_pluecker(a), pb = to_pluecker(b);
        CHECK(incidence_form(pa, pb) == incidence_form(pb, pa));
        PlueckerLine pa3 = pa;
        for (auto& c : pa3.p) c *= make_rat(-3, 2);
        CHECK(incidence_form(pa3, pb) == make_rat(-3, 2) * incidence_form(pa, pb));
    }
}

TEST_CASE("wedge2 conventions") {
    Quadric I;
    for (int i = 0; i < 4; ++i) I.q[i][i] = 1;
    auto W = wedge2(I);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) CHECK(W[r][c] == (r == c ? 1 : 0));

    Quadric D;
    Rat d[4] = {Rat(2), Rat(3), Rat(5), Rat(7)};
    for (int i = 0; i < 4; ++i) D.q[i][i] = d[i];
    auto WD = wedge2(D);
    Rat expect[6] = {Rat(6), Rat(10), Rat(14), Rat(15), Rat(21), Rat(35)};
    for (int r = 0; r < 6; ++r) CHECK(WD[r][r] == expect[r]);
}

TEST_CASE("tangency forms") {
    LineR3 xaxis({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    auto px = to_pluecker(xaxis);
    Sphere tangent({Rat(0), Rat(0), Rat(1)}, Rat(1));
    Sphere secant({Rat(0), Rat(0), Rat(0)}, Rat(1));
    Sphere missed({Rat(0), Rat(0), Rat(3)}, Rat(1));

    CHECK(sgn(tangency_form(px, tangent)) == 0);
    CHECK(sgn(tangency_form(px, secant)) < 0);
    CHECK(sgn(tangency_form(px, missed)) > 0);
    CHECK(sgn(tangency_form_affine(xaxis, tangent)) == 0);
    CHECK(sgn(tangency_form_affine(xaxis, secant)) < 0);
    CHECK(sgn(tangency_form_affine(xaxis, missed)) > 0);

    // The two formulations agree exactly on random pairs, and translating
    // line and sphere together changes nothing.
    for (int trial = 0; trial < 1000; ++trial) {
        LineR3 l(rvec(), rdir());
        Rat r2 = rrat(1, 9);
        while (sgn(r2) <= 0) r2 = rrat(1, 9);
        Sphere s(rvec(), r2);
        Rat a = tangency_form_affine(l, s);
        CHECK(a == tangency_form(to_pluecker(l), s));
        Vec3 shift = rvec();
        LineR3 lt(l.base + shift, l.direction);
        Sphere st(s.center + shift, s.radius_squared);
        CHECK(tangency_form_affine(lt, st) == a);
    }
}

TEST_CASE("quadric through three skew lines") {
    // Grid lines on z = xy: g_i = (0,i,0) + t(1,0,i), h_j = (j,0,0) + t(0,1,j).
    auto g = [](long i) {
        return LineR3({Rat(0), Rat(i), Rat(0)}, {Rat(1), Rat(0), Rat(i)});
    };
    auto h = [](long j) {
        return LineR3({Rat(j), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(j)});
    };
    // Same-ruling lines are pairwise skew; opposite rulings always meet
    // (g_i and h_j intersect at (j, i, ij)), so a valid triple stays within
    // one ruling.
    Quadric Q = quadric_through_three_lines(g(1), g(2), g(3));
    // Proportional to z - xy = 0, i.e. q03 + q30 carry z, q12 + q21 carry -xy.
    Quadric expected;
    expected.q[0][3] = expected.q[3][0] = Rat(1);
    expected.q[1][2] = expected.q[2][1] = Rat(-1);
    Rat scale;
    bool found = false;
    for (int i = 0; i < 4 && !found; ++i)
        for (int j = 0; j < 4 && !found; ++j)
            if (sgn(expected.q[i][j]) != 0) {
                scale = Q.q[i][j] / expected.q[i][j];
                found = true;
            }
    REQUIRE(found);
    CHECK(sgn(scale) != 0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(Q.q[i][j] == scale * expected.q[i][j]);

    // Any other skew triple from the same grid gives the same surface.
    Quadric Q2 = quadric_through_three_lines(h(1), h(3), h(-2));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(Q2.q[i][j] * Q.q[0][3] == Q.q[i][j] * Q2.q[0][3]);

    // Meeting lines are rejected.
    LineR3 xaxis({Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)});
    LineR3 yaxis({Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)});
    CHECK_THROWS(quadric_through_three_lines(xaxis, yaxis, g(1)));

    // Random skew triples: containment is a polynomial identity.
    int done = 0;
    while (done < 25) {
        LineR3 a(rvec(), rdir()), b(rvec(), rdir()), c(rvec(), rdir());
        if (lines_meet(a, b) || lines_meet(a, c) || lines_meet(b, c)) continue;
        Quadric R = quadric_through_three_lines(a, b, c);
        CHECK(!R.is_zero());
        for (auto* l : {&a, &b, &c}) CHECK(R.eval_on_line(*l).is_zero());
        ++done;
    }
}
