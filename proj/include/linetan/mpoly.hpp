#pragma once

#include <map>
#include <string>
#include <vector>

#include "linetan/upoly.hpp"

namespace linetan {

// Sparse multivariate polynomial over Rat with an explicit ordered variable
// list. Terms map exponent vectors (aligned with the variable list) to
// nonzero coefficients. Immutable value semantics.
class MPoly {
public:
    using Expo = std::vector<int>;

    MPoly() = default;
    static MPoly constant(const Rat& q) {
        MPoly p;
        if (sgn(q) != 0) p.terms_[{}] = q;
        return p;
    }
    static MPoly variable(const std::string& name) {
        MPoly p;
        p.vars_ = {name};
        p.terms_[{1}] = 1;
        return p;
    }
    static MPoly from_upoly(const UPoly& u, const std::string& name) {
        MPoly p;
        p.vars_ = {name};
        for (int i = 0; i <= u.degree(); ++i)
            if (sgn(u[i]) != 0) p.terms_[{i}] = u[i];
        return p;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const std::map<Expo, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x != 0) return false;
        return true;
    }
    Rat constant_value() const {
        for (const auto& [e, c] : terms_) {
            bool all0 = true;
            for (int x : e) all0 &= (x == 0);
            if (all0) return c;
        }
        return Rat(0);
    }

    int var_index(const std::string& name) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return (int)i;
        return -1;
    }

    int degree(const std::string& var) const {
        int vi = var_index(var);
        if (vi < 0) return 0;
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[vi]);
        return d;
    }

    int total_degree() const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool operator==(const MPoly& o) const { return (*this - o).is_zero(); }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        auto [va, vb, vars] = align(a, b);
        MPoly r;
        r.vars_ = std::move(vars);
        for (const auto& [e, c] : va.terms_) r.add_term(e, c);
        for (const auto& [e, c] : vb.terms_) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        auto [va, vb, vars] = align(a, b);
        MPoly r;
        r.vars_ = std::move(vars);
        for (const auto& [ea, ca] : va.terms_)
            for (const auto& [eb, cb] : vb.terms_) {
                Expo e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(const Rat& s, const MPoly& a) {
        MPoly r;
        if (sgn(s) == 0) return r;
        r.vars_ = a.vars_;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = s * c;
        return r;
    }
    friend MPoly operator*(const MPoly& a, const Rat& s) { return s * a; }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly pow(int n) const {
        MPoly r = constant(1), base = *this;
        for (; n > 0; n >>= 1) {
            if (n & 1) r = r * base;
            if (n > 1) base = base * base;
        }
        return r;
    }

    MPoly derivative(const std::string& var) const {
        int vi = var_index(var);
        MPoly r;
        r.vars_ = vars_;
        if (vi < 0) return MPoly();
        for (const auto& [e, c] : terms_) {
            if (e[vi] == 0) continue;
            Expo e2 = e;
            e2[vi] -= 1;
            r.add_term(e2, Rat((long)e[vi]) * c);
        }
        return r;
    }

    // Coefficients with respect to var, ascending; each coefficient keeps the
    // full variable list with var's exponent zeroed.
    std::vector<MPoly> coeffs_in(const std::string& var) const {
        int d = degree(var);
        std::vector<MPoly> out((size_t)d + 1);
        for (auto& p : out) p.vars_ = vars_;
        int vi = var_index(var);
        for (const auto& [e, c] : terms_) {
            int k = vi >= 0 ? e[vi] : 0;
            Expo e2 = e;
            if (vi >= 0) e2[vi] = 0;
            out[k].add_term(e2, c);
        }
        return out;
    }

    MPoly substitute(const std::string& var, const MPoly& value) const {
        auto cs = coeffs_in(var);
        MPoly acc;
        for (size_t i = cs.size(); i-- > 0;) acc = acc * value + cs[i];
        return acc.compact();
    }
    MPoly substitute(const std::string& var, const Rat& value) const {
        return substitute(var, MPoly::constant(value));
    }

    Rat eval(const std::map<std::string, Rat>& point) const {
        Rat acc(0);
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (size_t i = 0; i < vars_.size(); ++i) {
                auto it = point.find(vars_[i]);
                if (e[i] != 0 && it == point.end())
                    throw std::invalid_argument("MPoly::eval: missing variable " + vars_[i]);
                for (int k = 0; k < e[i]; ++k) t *= it->second;
            }
            acc += t;
        }
        return acc;
    }

    // Requires at most one variable with positive degree.
    UPoly to_upoly() const {
        std::string v;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (degree(vars_[i]) > 0) {
                if (!v.empty() && v != vars_[i])
                    throw std::logic_error("MPoly::to_upoly: not univariate");
                v = vars_[i];
            }
        if (v.empty()) return UPoly::constant(constant_value());
        return to_upoly(v);
    }
    UPoly to_upoly(const std::string& var) const {
        auto cs = coeffs_in(var);
        std::vector<Rat> coeffs(cs.size());
        for (size_t i = 0; i < cs.size(); ++i) {
            if (!cs[i].is_constant())
                throw std::logic_error("MPoly::to_upoly: extra variables remain");
            coeffs[i] = cs[i].constant_value();
        }
        return UPoly(std::move(coeffs));
    }

    // Exact division (throws when not divisible). Lex order on the current
    // variable list; correct whenever the quotient exists.
    static MPoly exact_div(const MPoly& a, const MPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("MPoly::exact_div: zero divisor");
        auto [ra, rb, vars] = align(a, b);
        MPoly rem = ra, quot;
        quot.vars_ = vars;
        auto ltb = std::prev(rb.terms_.end());
        while (!rem.is_zero()) {
            auto lta = std::prev(rem.terms_.end());
            Expo e = lta->first;
            bool ok = true;
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] -= ltb->first[i];
                if (e[i] < 0) ok = false;
            }
            if (!ok) throw std::logic_error("MPoly::exact_div: not divisible");
            Rat c = lta->second / ltb->second;
            MPoly t;
            t.vars_ = vars;
            t.terms_[e] = c;
            quot.add_term(e, c);
            rem = rem - t * rb;
        }
        return quot.compact();
    }

    // Drops variables that no longer occur.
    MPoly compact() const {
        std::vector<bool> used(vars_.size(), false);
        for (const auto& [e, c] : terms_)
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) used[i] = true;
        MPoly r;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) r.vars_.push_back(vars_[i]);
        for (const auto& [e, c] : terms_) {
            Expo e2;
            for (size_t i = 0; i < e.size(); ++i)
                if (used[i]) e2.push_back(e[i]);
            r.terms_[e2] = c;
        }
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!out.empty()) out += sgn(c) > 0 ? " + " : " - ";
            else if (sgn(c) < 0) out += "-";
            Rat a = abs(c);
            std::string mono;
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty() || a != 1) out += a.get_str();
            if (!mono.empty() && a != 1) out += "*";
            out += mono;
        }
        return out;
    }

private:
    void add_term(const Expo& e, const Rat& c) {
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    // Rewrites both operands over the merged variable list (first operand's
    // order, then the second's new variables).
    static std::tuple<MPoly, MPoly, std::vector<std::string>> align(const MPoly& a,
                                                                    const MPoly& b) {
        std::vector<std::string> vars = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        auto remap = [&](const MPoly& p) {
            MPoly r;
            r.vars_ = vars;
            std::vector<int> where(p.vars_.size());
            for (size_t i = 0; i < p.vars_.size(); ++i)
                where[i] = (int)(std::find(vars.begin(), vars.end(), p.vars_[i]) - vars.begin());
            for (const auto& [e, c] : p.terms_) {
                Expo e2(vars.size(), 0);
                for (size_t i = 0; i < e.size(); ++i) e2[where[i]] = e[i];
                r.terms_[e2] = c;
            }
            return r;
        };
        return {remap(a), remap(b), vars};
    }

    std::vector<std::string> vars_;
    std::map<Expo, Rat> terms_;
};

// Scale by a positive rational so the coefficients become coprime integers;
// harmless for zero-set questions and keeps nested resultants small.
inline MPoly normalize_content(const MPoly& p) {
    if (p.is_zero()) return p;
    Int g(0), l(1);
    for (const auto& [e, c] : p.terms()) {
        g = gcd(g, c.get_num());
        l = lcm(l, c.get_den());
    }
    return make_rat(l, g) * p;
}

// Res_var(f, g) as the determinant of the Sylvester matrix, computed by
// Bareiss fraction-free elimination over the polynomial ring (row pivoting
// only, so every interior division is exact).
inline MPoly resultant(const MPoly& f, const MPoly& g, const std::string& var) {
    int df = f.degree(var), dg = g.degree(var);
    if (df == 0 && dg == 0)
        throw std::invalid_argument("resultant: variable absent from both inputs");
    if (f.is_zero() || g.is_zero()) return MPoly();
    if (df == 0) return f.pow(dg);
    if (dg == 0) return g.pow(df);
    auto fc = f.coeffs_in(var), gc = g.coeffs_in(var);
    int n = df + dg;
    std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n));
    for (int i = 0; i < dg; ++i)
        for (int j = 0; j <= df; ++j) m[i][i + j] = fc[df - j];
    for (int i = 0; i < df; ++i)
        for (int j = 0; j <= dg; ++j) m[dg + i][i + j] = gc[dg - j];
    int sign_flip = 1;
    MPoly prev = MPoly::constant(1);
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { piv = i; break; }
            if (piv < 0) return MPoly();
            std::swap(m[k], m[piv]);
            sign_flip = -sign_flip;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = MPoly::exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = MPoly();
        }
        prev = m[k][k];
    }
    MPoly det = m[n - 1][n - 1];
    return sign_flip < 0 ? (-det).compact() : det.compact();
}

// Univariate-contract wrappers so callers can stay in the sparse type.
inline std::vector<std::pair<UPoly, int>> squarefree_decompose(const MPoly& f) {
    return squarefree_decompose(f.to_upoly());
}
inline std::vector<RootInterval> isolate_real_roots(const MPoly& f) {
    return isolate_real_roots(f.to_upoly());
}

}  // namespace linetan
