// Copyright 2026 The Sketchanim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace sketchanim {

/// A 2D point or vector in canvas units.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2& operator+=(const Point2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Point2& operator-=(const Point2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr Point2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }
    friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, const Point2& b) {
    return a += b;
}
constexpr Point2 operator-(Point2 a, const Point2& b) {
    return a -= b;
}
constexpr Point2 operator-(const Point2& a) {
    return {-a.x, -a.y};
}
constexpr Point2 operator*(double s, Point2 a) {
    return a *= s;
}
constexpr Point2 operator*(Point2 a, double s) {
    return a *= s;
}
constexpr double dot(const Point2& a, const Point2& b) {
    return a.x * b.x + a.y * b.y;
}
/// Scalar 2D cross product a.x*b.y - a.y*b.x.
constexpr double cross(const Point2& a, const Point2& b) {
    return a.x * b.y - a.y * b.x;
}
inline double norm(const Point2& a) {
    return std::hypot(a.x, a.y);
}
inline bool is_finite(const Point2& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    static constexpr Mat2 identity() {
        return {};
    }
    static constexpr Mat2 zero() {
        return {0.0, 0.0, 0.0, 0.0};
    }
    static Mat2 rotation(double angle) {
        const double cs = std::cos(angle);
        const double sn = std::sin(angle);
        return {cs, -sn, sn, cs};
    }
    /// d/dangle of rotation(angle).
    static Mat2 rotation_derivative(double angle) {
        const double cs = std::cos(angle);
        const double sn = std::sin(angle);
        return {-sn, -cs, cs, -sn};
    }
    /// Outer product u v^T.
    static constexpr Mat2 outer(const Point2& u, const Point2& v) {
        return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y};
    }

    constexpr Mat2 transposed() const {
        return {a, c, b, d};
    }
    constexpr Mat2& operator+=(const Mat2& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        d += o.d;
        return *this;
    }
    constexpr Mat2& operator*=(double s) {
        a *= s;
        b *= s;
        c *= s;
        d *= s;
        return *this;
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Point2 operator*(const Mat2& m, const Point2& p) {
    return {m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y};
}
constexpr Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c,
            m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c,
            m.c * n.b + m.d * n.d};
}
constexpr Mat2 operator+(Mat2 m, const Mat2& n) {
    return m += n;
}
constexpr Mat2 operator-(const Mat2& m, const Mat2& n) {
    return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}
constexpr Mat2 operator*(double s, Mat2 m) {
    return m *= s;
}
/// Frobenius inner product.
constexpr double frobenius(const Mat2& m, const Mat2& n) {
    return m.a * n.a + m.b * n.b + m.c * n.c + m.d * n.d;
}

/// One stroke: a cubic Bezier curve with exactly four control points.
struct CubicBezier {
    std::array<Point2, 4> control{};

    friend constexpr bool operator==(const CubicBezier&, const CubicBezier&) = default;
};

/// Sample counts for the composite midpoint rule in u (curve parameter)
/// and t (time within one frame interval).
struct QuadratureSpec {
    int samples_u = 1000;
    int samples_t = 16;

    /// Throws InvalidArgument unless both counts are >= 2.
    void validate() const;
};

/// Cubic Bernstein weights at u.
std::array<double, 4> bernstein(double u);
/// Derivatives of the cubic Bernstein weights at u.
std::array<double, 4> bernstein_derivative(double u);

Point2 eval_bezier(const CubicBezier& c, double u);
Point2 bezier_velocity(const CubicBezier& c, double u);

/// Arc length by composite midpoint quadrature of |f'(u)| over [0, 1].
double curve_length(const CubicBezier& c, const QuadratureSpec& q = {});

/// Same value as curve_length; writes d(length)/d(control[j]) into grad.
double curve_length(const CubicBezier& c, const QuadratureSpec& q, std::array<Point2, 4>& grad);

/// Precomputed midpoint nodes with Bernstein weights and derivatives.
struct BernsteinTable {
    std::vector<double> nodes;
    std::vector<std::array<double, 4>> basis;
    std::vector<std::array<double, 4>> derivative;
    double weight = 0.0;

    explicit BernsteinTable(int samples);
};

Point2 centroid(std::span<const Point2> points);

} // namespace sketchanim
