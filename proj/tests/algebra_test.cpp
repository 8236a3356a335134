#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linetan/algreal.hpp"
#include "linetan/mpoly.hpp"
#include "linetan/pairsolve.hpp"

using namespace linetan;

TEST_CASE("rational parsing and square roots") {
    CHECK(parse_rat("3/4") == make_rat(3, 4));
    CHECK(parse_rat("-12") == Rat(-12));
    CHECK(parse_rat("1.425") == make_rat(57, 40));
    CHECK(parse_rat("-0.25") == make_rat(-1, 4));
    CHECK(parse_rat("2.030625") == make_rat(2030625, 1000000));

    CHECK(rational_sqrt(make_rat(9, 4)) == make_rat(3, 2));
    CHECK(!rational_sqrt(Rat(2)).has_value());
    Rat eps = make_rat(1, 1000000);
    Rat s = approx_sqrt(Rat(2), eps);
    CHECK(s * s <= 2);
    CHECK((s + eps) * (s + eps) > 2);

    CHECK(rat_to_decimal(make_rat(1, 3), 5) == "0.33333");
    CHECK(rat_to_decimal(make_rat(-7, 2), 2) == "-3.50");
}

TEST_CASE("univariate polynomial arithmetic") {
    UPoly f = UPoly::of({Rat(-2), Rat(0), Rat(1)});  // x^2 - 2
    UPoly g = UPoly::of({Rat(1), Rat(1)});           // x + 1
    CHECK((f * g).degree() == 3);
    CHECK(f.eval(Rat(3)) == 7);
    auto [q, r] = UPoly::divrem(f, g);
    CHECK(q * g + r == f);
    CHECK(r.degree() == 0);
    CHECK(UPoly::gcd(f * g, g * g) == g.primitive());

    auto [gg, s, t] = UPoly::ext_gcd(f, g);
    CHECK(s * f + t * g == gg);
}

TEST_CASE("squarefree decomposition") {
    UPoly xm1 = UPoly::of({Rat(-1), Rat(1)});
    UPoly cube = xm1 * xm1 * xm1;
    auto d = squarefree_decompose(cube);
    REQUIRE(d.size() == 1);
    CHECK(d[0].first == xm1);
    CHECK(d[0].second == 3);

    UPoly f = UPoly::of({Rat(-2), Rat(0), Rat(1)});
    d = squarefree_decompose(f);
    REQUIRE(d.size() == 1);
    CHECK(d[0].first == f);
    CHECK(d[0].second == 1);

    // Reconstruction identity for a mixed product.
    UPoly xm2 = UPoly::of({Rat(-2), Rat(1)});
    UPoly mix = f * xm2 * xm2 * xm1 * xm1 * xm1;
    UPoly prod = UPoly::constant(Rat(1));
    for (auto& [fac, m] : squarefree_decompose(mix))
        for (int i = 0; i < m; ++i) prod *= fac;
    CHECK(prod.primitive() == mix.primitive());
}

TEST_CASE("real root isolation") {
    UPoly f = UPoly::of({Rat(-2), Rat(0), Rat(1)});
    auto ivs = isolate_real_roots(f);
    REQUIRE(ivs.size() == 2);
    CHECK(ivs[0].hi < ivs[1].lo);
    CHECK(ivs[0].multiplicity == 1);
    CHECK(sign(f.eval(ivs[0].lo)) * sign(f.eval(ivs[0].hi)) < 0);

    UPoly none = UPoly::of({Rat(1), Rat(0), Rat(1)});  // x^2 + 1
    CHECK(isolate_real_roots(none).empty());

    // Multiplicities attach to the intervals.
    UPoly xm1 = UPoly::of({Rat(-1), Rat(1)});
    auto m = isolate_real_roots(f * xm1 * xm1);
    REQUIRE(m.size() == 3);
    int mults = 0;
    for (auto& iv : m) mults += iv.multiplicity;
    CHECK(mults == 4);

    // Scaling invariance.
    auto scaled = isolate_real_roots(make_rat(-7, 3) * f);
    REQUIRE(scaled.size() == 2);
    CHECK(scaled[0].lo == ivs[0].lo);
    CHECK(scaled[1].hi == ivs[1].hi);
}

TEST_CASE("root refinement") {
    UPoly f = UPoly::of({Rat(-2), Rat(0), Rat(1)});
    RootInterval iv{Rat(1), make_rat(3, 2), 1};
    Rat w = make_rat(1, 1000000);
    auto r = refine_root(f, iv, w);
    CHECK(r.width() <= w);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 2);

    UPoly lin = UPoly::of({make_rat(-1, 3), Rat(1)});
    auto r2 = refine_root(lin, {Rat(0), Rat(1), 1}, make_rat(1, 1000000000));
    CHECK(r2.lo <= make_rat(1, 3));
    CHECK(r2.hi >= make_rat(1, 3));
}

TEST_CASE("sparse multivariate polynomials") {
    MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
    MPoly p = x * x + y * y - MPoly::constant(Rat(1));
    CHECK(p.degree("x") == 2);
    CHECK(p.total_degree() == 2);
    CHECK(p.substitute("x", Rat(1)).substitute("y", Rat(0)).constant_value() == 0);
    CHECK(p.eval({{"x", make_rat(3, 5)}, {"y", make_rat(4, 5)}}) == 0);

    MPoly q = (x + y).pow(3);
    CHECK(q.degree("y") == 3);
    CHECK(MPoly::exact_div(q, x + y) == (x + y) * (x + y));
    CHECK_THROWS(MPoly::exact_div(q + MPoly::constant(Rat(1)), x + y));

    CHECK(p.derivative("x") == Rat(2) * x);
}

TEST_CASE("resultants") {
    MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
    MPoly a = MPoly::variable("a"), b = MPoly::variable("b");

    MPoly r1 = resultant(x * x + y * y - MPoly::constant(Rat(1)), x - y, "x");
    CHECK(r1 == Rat(2) * y * y - MPoly::constant(Rat(1)));

    MPoly r2 = resultant(x - a, x - b, "x");
    CHECK(r2 == a - b);

    CHECK_THROWS(resultant(a, b, "x"));
}

TEST_CASE("resultant specialization at random rational points") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coef(-6, 6);
    MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
    int done = 0;
    while (done < 100) {
        MPoly f, g;
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j + i <= 2; ++j) {
                f += MPoly::constant(Rat(coef(rng))) * x.pow(i) * y.pow(j);
                g += MPoly::constant(Rat(coef(rng))) * x.pow(i) * y.pow(j);
            }
        if (f.degree("x") < 1 || g.degree("x") < 1) continue;
        MPoly res = resultant(f, g, "x");
        Rat y0 = make_rat(coef(rng), 7);
        auto fy = f.substitute("y", y0), gy = g.substitute("y", y0);
        if (fy.degree("x") != f.degree("x") || gy.degree("x") != g.degree("x")) continue;
        MPoly spec = resultant(fy, gy, "x");
        CHECK(spec.constant_value() == res.substitute("y", y0).constant_value());
        ++done;
    }
}

TEST_CASE("algebraic number comparisons") {
    UPoly f = UPoly::of({Rat(-2), Rat(0), Rat(1)});       // x^2 - 2
    UPoly h = UPoly::of({Rat(-4), Rat(0), Rat(0), Rat(0), Rat(1)});  // x^4 - 4
    AlgReal s2(f, Rat(1), make_rat(3, 2));
    AlgReal s2b(h, Rat(1), Rat(2));
    CHECK(s2 == s2b);
    CHECK(s2 > AlgReal(make_rat(7, 5)));
    CHECK(s2 < AlgReal(make_rat(3, 2)));
    CHECK(s2.sign() == 1);
    CHECK(s2.sign_at(f) == 0);
    CHECK(s2.sign_at(UPoly::of({Rat(-3), Rat(0), Rat(1)})) < 0);  // sqrt2 < sqrt3

    AlgReal neg(f, make_rat(-3, 2), Rat(-1));
    CHECK(neg < s2);
    CHECK(neg.sign() == -1);

    s2.refine_below(make_rat(1, 1000000));
    CHECK(s2.upper() - s2.lower() <= make_rat(1, 1000000));
    CHECK(s2 == s2b);

    // Rational roots collapse to exact form.
    AlgReal third(UPoly::of({make_rat(-1, 3), Rat(1)}), Rat(0), Rat(1));
    CHECK(third.is_rational());
    CHECK(third.rational() == make_rat(1, 3));
}

TEST_CASE("bivariate system solving") {
    MPoly x = MPoly::variable("x"), y = MPoly::variable("y");
    MPoly circle = x * x + y * y - MPoly::constant(Rat(1));

    SUBCASE("transversal line: two simple intersections") {
        auto res = pair_solve(circle, x - y, "x", "y");
        REQUIRE(res.solutions.size() == 2);
        CHECK(res.complex_count == 2);
        CHECK(!res.infinitely_many);
        for (auto& s : res.solutions) {
            CHECK(s.multiplicity == 1);
            CHECK(s.sign_at(circle, "x", "y") == 0);
            CHECK(s.sign_at(x - y, "x", "y") == 0);
        }
        AlgReal x0 = res.solutions[0].x_value();
        AlgReal y0 = res.solutions[0].y_value();
        CHECK(x0 == y0);
    }

    SUBCASE("tangent line: one double intersection") {
        auto res = pair_solve(circle, x - MPoly::constant(Rat(1)), "x", "y");
        REQUIRE(res.solutions.size() == 1);
        CHECK(res.solutions[0].multiplicity == 2);
        CHECK(res.complex_count == 2);
        CHECK(res.solutions[0].x_value() == AlgReal(Rat(1)));
        CHECK(res.solutions[0].y_value() == AlgReal(Rat(0)));
    }

    SUBCASE("no real solutions but two complex ones") {
        auto res = pair_solve(circle, x - MPoly::constant(Rat(2)), "x", "y");
        CHECK(res.solutions.empty());
        CHECK(res.complex_count == 2);
    }

    SUBCASE("shared component is reported, not enumerated") {
        auto res = pair_solve(circle, Rat(3) * circle, "x", "y");
        CHECK(res.infinitely_many);
    }

    SUBCASE("extraneous eliminant factors are rejected") {
        MPoly p = x * y + MPoly::constant(Rat(1));
        MPoly q = x * y + x + MPoly::constant(Rat(1));
        auto res = pair_solve(p, q, "x", "y");
        CHECK(res.solutions.empty());
        CHECK(res.complex_count == 0);
        CHECK(res.rejected_factors.size() >= 1);
    }

    SUBCASE("mixed curve intersection") {
        auto res = pair_solve(x * y - MPoly::constant(Rat(1)), y * y - x, "x", "y");
        REQUIRE(res.solutions.size() == 1);
        CHECK(res.complex_count == 3);
        CHECK(res.solutions[0].x_value() == AlgReal(Rat(1)));
        CHECK(res.solutions[0].y_value() == AlgReal(Rat(1)));
    }
}

TEST_CASE("root counting matches Sturm data") {
    // deg f - real roots (with multiplicity) is twice the conjugate pairs.
    UPoly f = UPoly::of({Rat(-2), Rat(0), Rat(1)}) * UPoly::of({Rat(1), Rat(0), Rat(1)});
    CHECK(count_real_roots(f) == 2);
    auto ivs = isolate_real_roots(f);
    int with_mult = 0;
    for (auto& iv : ivs) with_mult += iv.multiplicity;
    CHECK(f.degree() - with_mult == 2);
}
