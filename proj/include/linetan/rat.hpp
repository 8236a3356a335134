#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linetan {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as they are produced by arithmetic; the
// raw (num, den) constructor does not, so go through make_rat.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den = 1) {
    return make_rat(Int(num), Int(den));
}

inline int sign(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return abs(q); }

// Parses "p/q", integer, or decimal strings ("1.425" -> 57/40). Decimals
// become exact rationals, never binary floats.
inline Rat parse_rat(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
    std::string str(s);
    auto slash = str.find('/');
    if (slash != std::string::npos) {
        Int num(str.substr(0, slash), 10);
        Int den(str.substr(slash + 1), 10);
        return make_rat(num, den);
    }
    auto dot = str.find('.');
    if (dot == std::string::npos) {
        return Rat(Int(str, 10));
    }
    bool neg = false;
    std::string digits = str;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
        dot -= 1;
    }
    std::string intpart = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    if (intpart.empty()) intpart = "0";
    Int num(intpart + frac, 10);
    Int den(1);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rat q = make_rat(num, den);
    return neg ? Rat(-q) : q;
}

// Exact square root when the rational is a perfect square.
inline std::optional<Rat> rational_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    Int num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rat(rn, rd);
}

// Rational lower approximation of sqrt(q) with error < eps (q >= 0).
inline Rat approx_sqrt(const Rat& q, const Rat& eps) {
    if (sgn(q) < 0) throw std::invalid_argument("approx_sqrt: negative input");
    if (sgn(q) == 0) return Rat(0);
    if (auto r = rational_sqrt(q)) return *r;
    // Scale so that floor(sqrt(num * scale^2 / den)) / scale is within eps.
    Int scale = eps.get_den() / gcd(eps.get_den(), eps.get_num()) + 1;
    // Ensure 1/scale < eps.
    while (Rat(Int(1), scale) >= eps) scale *= 2;
    Int num = q.get_num() * scale * scale;
    Int den = q.get_den();
    Int val = num / den;
    Int root;
    mpz_sqrt(root.get_mpz_t(), val.get_mpz_t());
    return make_rat(root, scale);
}

// Decimal rendering with the given number of fractional digits (truncated).
inline std::string rat_to_decimal(const Rat& q, int digits) {
    bool neg = sgn(q) < 0;
    Rat a = abs(q);
    Int scale(1);
    for (int i = 0; i < digits; ++i) scale *= 10;
    Int scaled = (a.get_num() * scale) / a.get_den();
    std::string s = scaled.get_str();
    while ((int)s.size() <= digits) s = "0" + s;
    std::string ip = s.substr(0, s.size() - digits);
    std::string fp = s.substr(s.size() - digits);
    std::string out = ip + (digits > 0 ? "." + fp : "");
    return neg && scaled != 0 ? "-" + out : out;
}

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace linetan
