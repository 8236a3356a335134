#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "linetan/rat.hpp"

namespace linetan {

// Exact 3-vector over the rationals. Used both for points and directions.
struct Vec3 {
    Rat x{0}, y{0}, z{0};

    Vec3() = default;
    Vec3(Rat x_, Rat y_, Rat z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    Rat& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const Rat& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(const Rat& s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(const Rat& s) const { return {x / s, y / s, z / s}; }
    friend Vec3 operator*(const Rat& s, const Vec3& v) { return v * s; }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
};

using Point3 = Vec3;

inline Rat dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline Rat norm2(const Vec3& v) { return dot(v, v); }

inline Rat triple(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(a, cross(b, c));
}

inline bool parallel(const Vec3& a, const Vec3& b) {
    return cross(a, b).is_zero();
}

// Scales to clear denominators, then divides by the integer content; the
// first nonzero coordinate is made positive. Canonical representative of a
// projective direction.
inline Vec3 normalize_direction(const Vec3& v) {
    if (v.is_zero()) return v;
    Int l = lcm(lcm(v.x.get_den(), v.y.get_den()), v.z.get_den());
    Int nx = v.x.get_num() * (l / v.x.get_den());
    Int ny = v.y.get_num() * (l / v.y.get_den());
    Int nz = v.z.get_num() * (l / v.z.get_den());
    Int g = gcd(gcd(abs(nx), abs(ny)), abs(nz));
    nx /= g; ny /= g; nz /= g;
    int lead = sgn(nx) != 0 ? sgn(nx) : (sgn(ny) != 0 ? sgn(ny) : sgn(nz));
    if (lead < 0) { nx = -nx; ny = -ny; nz = -nz; }
    return {Rat(nx), Rat(ny), Rat(nz)};
}

// Dense rational matrix with exact Gaussian elimination helpers.
class Mat {
public:
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rat& operator()(int i, int j) { return a_[i * c_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[i * c_ + j]; }

    // Reduced row echelon form in place; returns the rank and records pivot
    // columns.
    int rref(std::vector<int>* pivot_cols = nullptr) {
        int rank = 0;
        for (int col = 0; col < c_ && rank < r_; ++col) {
            int piv = -1;
            for (int i = rank; i < r_; ++i)
                if (sgn((*this)(i, col)) != 0) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != rank)
                for (int j = 0; j < c_; ++j) std::swap(a_[piv * c_ + j], a_[rank * c_ + j]);
            Rat inv = 1 / (*this)(rank, col);
            for (int j = col; j < c_; ++j) (*this)(rank, j) *= inv;
            for (int i = 0; i < r_; ++i) {
                if (i == rank) continue;
                Rat f = (*this)(i, col);
                if (sgn(f) == 0) continue;
                for (int j = col; j < c_; ++j) (*this)(i, j) -= f * (*this)(rank, j);
            }
            if (pivot_cols) pivot_cols->push_back(col);
            ++rank;
        }
        return rank;
    }

    int rank() const { Mat m = *this; return m.rref(); }

    // Basis of the right null space.
    std::vector<std::vector<Rat>> nullspace() const {
        Mat m = *this;
        std::vector<int> piv;
        int rank = m.rref(&piv);
        std::vector<bool> is_piv(c_, false);
        for (int p : piv) is_piv[p] = true;
        std::vector<std::vector<Rat>> basis;
        for (int free = 0; free < c_; ++free) {
            if (is_piv[free]) continue;
            std::vector<Rat> v(c_, Rat(0));
            v[free] = 1;
            for (int i = 0; i < rank; ++i) v[piv[i]] = -m(i, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    Rat det() const {
        if (r_ != c_) throw std::invalid_argument("det: not square");
        Mat m = *this;
        Rat d(1);
        for (int col = 0; col < c_; ++col) {
            int piv = -1;
            for (int i = col; i < r_; ++i)
                if (sgn(m(i, col)) != 0) { piv = i; break; }
            if (piv < 0) return Rat(0);
            if (piv != col) {
                for (int j = 0; j < c_; ++j) std::swap(m.a_[piv * c_ + j], m.a_[col * c_ + j]);
                d = -d;
            }
            d *= m(col, col);
            Rat inv = 1 / m(col, col);
            for (int i = col + 1; i < r_; ++i) {
                Rat f = m(i, col) * inv;
                if (sgn(f) == 0) continue;
                for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
            }
        }
        return d;
    }

    // Solves A x = b; empty when inconsistent, any one solution when
    // underdetermined.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const {
        if ((int)b.size() != r_) throw std::invalid_argument("solve: size mismatch");
        Mat aug(r_, c_ + 1);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_) = b[i];
        }
        std::vector<int> piv;
        int rank = aug.rref(&piv);
        for (int i = 0; i < rank; ++i)
            if (piv[i] == c_) return std::nullopt;  // row [0 ... 0 | 1]
        std::vector<Rat> x(c_, Rat(0));
        for (int i = 0; i < rank; ++i) x[piv[i]] = aug(i, c_);
        return x;
    }

private:
    int r_, c_;
    std::vector<Rat> a_;
};

// det and adjugate of an exact 3x3 (row-major array of rows).
using Mat3 = std::array<Vec3, 3>;

inline Rat det3(const Mat3& m) { return triple(m[0], m[1], m[2]); }

inline Vec3 mat3_mul(const Mat3& m, const Vec3& v) {
    return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

// adj(M) * M = det(M) * I.
inline Mat3 adjugate3(const Mat3& m) {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            a[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    return a;
}

}  // namespace linetan
