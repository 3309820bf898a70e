#ifndef MODISC_GEOMETRY_HPP
#define MODISC_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace modisc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
};

inline Vec2 operator*(double c, const Vec2& v) { return {c * v.x, c * v.y}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm2(const Vec2& v) { return std::sqrt(dot(v, v)); }

/// Discrete l^p norm on R^2; p may be infinity.
inline double lp_norm(const Vec2& v, double p) {
    const double ax = std::abs(v.x), ay = std::abs(v.y);
    if (std::isinf(p)) return std::max(ax, ay);
    if (p == 1.0) return ax + ay;
    if (p == 2.0) return std::sqrt(ax * ax + ay * ay);
    return std::pow(std::pow(ax, p) + std::pow(ay, p), 1.0 / p);
}

/// Symmetric 2x2 matrix, stored as (a11, a12, a22).
struct SymMat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    SymMat2() = default;
    SymMat2(double m11, double m12, double m22) : a11(m11), a12(m12), a22(m22) {}

    static SymMat2 identity() { return {1.0, 0.0, 1.0}; }
    static SymMat2 scalar(double c) { return {c, 0.0, c}; }
    static SymMat2 zero() { return {0.0, 0.0, 0.0}; }

    Vec2 apply(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y};
    }

    SymMat2 operator+(const SymMat2& o) const { return {a11 + o.a11, a12 + o.a12, a22 + o.a22}; }
    SymMat2 operator-(const SymMat2& o) const { return {a11 - o.a11, a12 - o.a12, a22 - o.a22}; }
    SymMat2 operator*(double c) const { return {c * a11, c * a12, c * a22}; }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a12; }

    bool is_zero() const { return a11 == 0.0 && a12 == 0.0 && a22 == 0.0; }

    double max_abs_entry() const {
        return std::max({std::abs(a11), std::abs(a12), std::abs(a22)});
    }

    SymMat2 inverse() const {
        const double d = det();
        if (d == 0.0) throw std::domain_error("SymMat2::inverse: singular matrix");
        return {a22 / d, -a12 / d, a11 / d};
    }
};

/// Eigenvalues of a symmetric 2x2 matrix, lambda1 >= lambda2, plus the unit
/// eigenvector of lambda1. Uses the stable half-trace/radius form.
struct SymEig2 {
    double lambda1;
    double lambda2;
    Vec2 v1;  // unit eigenvector for lambda1
};

inline SymEig2 sym_eig(const SymMat2& m) {
    const double mean = 0.5 * (m.a11 + m.a22);
    const double h = 0.5 * (m.a11 - m.a22);
    const double r = std::hypot(h, m.a12);
    SymEig2 e;
    e.lambda1 = mean + r;
    e.lambda2 = mean - r;
    if (r == 0.0) {
        e.v1 = {1.0, 0.0};
        return e;
    }
    // pick the numerically larger residual column as the eigenvector
    Vec2 v{m.a12, e.lambda1 - m.a11};
    Vec2 w{e.lambda1 - m.a22, m.a12};
    if (dot(w, w) > dot(v, v)) v = w;
    const double n = norm2(v);
    e.v1 = {v.x / n, v.y / n};
    return e;
}

inline double spectral_norm(const SymMat2& m) {
    const SymEig2 e = sym_eig(m);
    return std::max(std::abs(e.lambda1), std::abs(e.lambda2));
}

inline double min_eigenvalue(const SymMat2& m) { return sym_eig(m).lambda2; }

/// f(A) for symmetric A via eigendecomposition: f(l1) v v^T + f(l2) w w^T.
template <typename F>
SymMat2 sym_apply_function(const SymMat2& m, F&& f) {
    const SymEig2 e = sym_eig(m);
    const double f1 = f(e.lambda1), f2 = f(e.lambda2);
    const Vec2 v = e.v1;
    const Vec2 w{-v.y, v.x};
    return {f1 * v.x * v.x + f2 * w.x * w.x,
            f1 * v.x * v.y + f2 * w.x * w.y,
            f1 * v.y * v.y + f2 * w.y * w.y};
}

inline SymMat2 sqrt_spd(const SymMat2& m) {
    if (sym_eig(m).lambda2 < 0.0)
        throw std::domain_error("sqrt_spd: matrix not positive semidefinite");
    return sym_apply_function(m, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

/// Symmetric sandwich product E * M * E for symmetric E, M (result symmetric).
inline SymMat2 sandwich(const SymMat2& e, const SymMat2& m) {
    // rows of E*M
    const double b11 = e.a11 * m.a11 + e.a12 * m.a12;
    const double b12 = e.a11 * m.a12 + e.a12 * m.a22;
    const double b21 = e.a12 * m.a11 + e.a22 * m.a12;
    const double b22 = e.a12 * m.a12 + e.a22 * m.a22;
    // (E*M)*E, then symmetrize the off-diagonal roundoff away
    const double c11 = b11 * e.a11 + b12 * e.a12;
    const double c12 = b11 * e.a12 + b12 * e.a22;
    const double c21 = b21 * e.a11 + b22 * e.a12;
    const double c22 = b21 * e.a12 + b22 * e.a22;
    return {c11, 0.5 * (c12 + c21), c22};
}

inline double triangle_signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

inline double triangle_diameter(const Vec2& a, const Vec2& b, const Vec2& c) {
    return std::max({norm2(b - a), norm2(c - b), norm2(a - c)});
}

}  // namespace modisc

#endif
