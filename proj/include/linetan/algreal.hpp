#pragma once

#include <compare>
#include <optional>
#include <utility>

#include "linetan/upoly.hpp"

namespace linetan {

// A real algebraic number: either an exact rational, or a root of a
// square-free rational polynomial isolated by an open interval with
// rational non-root endpoints. Immutable apart from interval refinement,
// which never changes the value represented.
class AlgReal {
public:
    AlgReal() : rational_(Rat(0)), is_rat_(true) {}
    /*implicit*/ AlgReal(Rat q) : rational_(std::move(q)), is_rat_(true) {}
    /*implicit*/ AlgReal(long n) : rational_(Rat(n)), is_rat_(true) {}

    // Takes ownership of a square-free defining polynomial and an isolating
    // interval (f(lo), f(hi) nonzero with opposite signs). Rational roots
    // collapse to the exact representation.
    AlgReal(UPoly f, Rat lo, Rat hi)
        : poly_(std::move(f)), lo_(std::move(lo)), hi_(std::move(hi)), is_rat_(false) {
        if (lo_ == hi_) { rational_ = lo_; is_rat_ = true; return; }
        // Degree-1 defining polynomials are rational on the nose.
        if (poly_.degree() == 1) {
            rational_ = -poly_[0] / poly_[1];
            is_rat_ = true;
        }
    }

    static AlgReal from_interval(const UPoly& squarefree, const RootInterval& iv) {
        if (iv.exact()) return AlgReal(iv.lo);
        return AlgReal(squarefree, iv.lo, iv.hi);
    }

    bool is_rational() const { return is_rat_; }
    const Rat& rational() const { return rational_; }
    const UPoly& defining_poly() const { return poly_; }

    Rat lower() const { return is_rat_ ? rational_ : lo_; }
    Rat upper() const { return is_rat_ ? rational_ : hi_; }
    Rat approx() const { return is_rat_ ? rational_ : (lo_ + hi_) / 2; }
    double to_double() const { return approx().get_d(); }

    void refine_below(const Rat& width) const {
        if (is_rat_) return;
        RootInterval iv{lo_, hi_, 1};
        iv = refine_root(poly_, iv, width);
        if (iv.exact()) { rational_ = iv.lo; is_rat_ = true; return; }
        lo_ = iv.lo; hi_ = iv.hi;
    }

    // Exact sign of g at this number.
    int sign_at(const UPoly& g) const {
        if (g.is_zero()) return 0;
        if (is_rat_) return sgn(g.eval(rational_));
        UPoly common = UPoly::gcd(poly_, g);
        if (common.degree() > 0 &&
            sgn(common.eval(lo_)) * sgn(common.eval(hi_)) < 0)
            return 0;  // alpha is a root of g
        // g(alpha) != 0: refine until the interval excludes every root of g.
        UPoly gs = squarefree_part(g);
        auto seq = sturm_sequence(gs);
        while (true) {
            if (count_roots(seq, lo_, hi_) == 0) {
                // No root of g inside: sign is constant on [lo, hi].
                Rat m = (lo_ + hi_) / 2;
                int s = sgn(g.eval(m));
                if (s != 0) return s;
            }
            refine_below((hi_ - lo_) / 4);
            if (is_rat_) return sgn(g.eval(rational_));
        }
    }

    int sign() const {
        if (is_rat_) return sgn(rational_);
        return sign_at(UPoly::x());
    }

    bool is_zero() const { return sign() == 0; }

    // Exact comparison.
    int compare(const AlgReal& o) const {
        if (is_rat_ && o.is_rat_) return cmp(rational_, o.rational_);
        if (o.is_rat_) return -o.compare_rat_side(*this);
        if (is_rat_) return compare_rat_side(o);
        // Both irrational.
        while (true) {
            if (hi_ < o.lo_ || hi_ == o.lo_) return -1;
            if (o.hi_ < lo_ || o.hi_ == lo_) return 1;
            // Overlapping: equal iff this is a root of o.poly_ that lies in
            // o's interval.
            if (sign_at(o.poly_) == 0) {
                // This number is a root of o.poly_. Refine our interval into
                // o's interval or away from it.
                refine_below((hi_ - lo_) / 4);
                if (is_rat_) return compare(o);
                if (o.lo_ <= lo_ && hi_ <= o.hi_) return 0;
                continue;
            }
            refine_below((hi_ - lo_) / 4);
            o.refine_below((o.hi_ - o.lo_) / 4);
            if (is_rat_ || o.is_rat_) return compare(o);
        }
    }

    bool operator==(const AlgReal& o) const { return compare(o) == 0; }
    bool operator<(const AlgReal& o) const { return compare(o) < 0; }
    bool operator<=(const AlgReal& o) const { return compare(o) <= 0; }
    bool operator>(const AlgReal& o) const { return compare(o) > 0; }
    bool operator>=(const AlgReal& o) const { return compare(o) >= 0; }

private:
    // Compare rational *this against irrational o.
    int compare_rat_side(const AlgReal& o) const {
        const Rat& q = rational_;
        while (true) {
            if (q <= o.lo_) return -1;
            if (q >= o.hi_) return 1;
            if (sgn(o.poly_.eval(q)) == 0) {
                // q is a root of o's polynomial inside the isolating interval,
                // hence equals o.
                return 0;
            }
            o.refine_below((o.hi_ - o.lo_) / 4);
            if (o.is_rat_) return cmp(q, o.rational_);
        }
    }

    mutable UPoly poly_;
    mutable Rat lo_, hi_;
    mutable Rat rational_;
    mutable bool is_rat_;
};

}  // namespace linetan
