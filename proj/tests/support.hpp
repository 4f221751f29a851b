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

// Independent reference computations for the test suites. Nothing here calls
// the library routine it is used to check.

#include <sketchanim/delaunay.hpp>
#include <sketchanim/geometry.hpp>
#include <sketchanim/mlp.hpp>
#include <sketchanim/sketch.hpp>
#include <sketchanim/transform.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <span>
#include <vector>

namespace testsupport {

using sketchanim::CubicBezier;
using sketchanim::Point2;
using sketchanim::SketchFrame;
using sketchanim::SketchVideo;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * sketchanim::uniform01(rng);
}

inline Point2 random_point(std::mt19937_64& rng, double lo, double hi) {
    const double x = uniform(rng, lo, hi);
    const double y = uniform(rng, lo, hi);
    return {x, y};
}

/// k strokes with control points drawn inside [lo, hi]^2.
inline SketchFrame random_sketch(std::mt19937_64& rng, std::size_t k, double lo = 40.0, double hi = 216.0) {
    SketchFrame f;
    for (std::size_t s = 0; s < k; ++s) {
        CubicBezier c;
        for (Point2& p : c.control) {
            p = random_point(rng, lo, hi);
        }
        f.strokes.push_back(c);
    }
    return f;
}

/// `base` followed by n - 1 frames with every point jittered by up to `jitter`.
inline SketchVideo random_video(std::mt19937_64& rng, const SketchFrame& base, std::size_t n, double jitter) {
    SketchVideo v;
    v.frames.push_back(base);
    for (std::size_t i = 1; i < n; ++i) {
        SketchFrame f = base;
        for (std::size_t j = 0; j < f.point_count(); ++j) {
            f.point(j) += random_point(rng, -jitter, jitter);
        }
        v.frames.push_back(f);
    }
    return v;
}

inline Point2 lerp(const Point2& a, const Point2& b, double t) {
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

/// de Casteljau evaluation.
inline Point2 casteljau(const std::array<Point2, 4>& p, double u) {
    const Point2 a = lerp(p[0], p[1], u);
    const Point2 b = lerp(p[1], p[2], u);
    const Point2 c = lerp(p[2], p[3], u);
    const Point2 d = lerp(a, b, u);
    const Point2 e = lerp(b, c, u);
    return lerp(d, e, u);
}

/// Hodograph: a quadratic through 3 (p1 - p0), 3 (p2 - p1), 3 (p3 - p2).
inline Point2 hodograph(const std::array<Point2, 4>& p, double u) {
    const Point2 q0{3.0 * (p[1].x - p[0].x), 3.0 * (p[1].y - p[0].y)};
    const Point2 q1{3.0 * (p[2].x - p[1].x), 3.0 * (p[2].y - p[1].y)};
    const Point2 q2{3.0 * (p[3].x - p[2].x), 3.0 * (p[3].y - p[2].y)};
    return lerp(lerp(q0, q1, u), lerp(q1, q2, u), u);
}

inline double simpson_step(const std::function<double(double)>& f,
                           double a,
                           double b,
                           double fa,
                           double fm,
                           double fb,
                           double whole,
                           double tol,
                           int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
           + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson integral of f over [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

inline double reference_length(const CubicBezier& c, double tol = 1e-12) {
    return adaptive_simpson(
        [&c](double u) {
            const Point2 v = hodograph(c.control, u);
            return std::hypot(v.x, v.y);
        },
        0.0,
        1.0,
        tol);
}

/// Position at time t of a control point moving under the parameter-space
/// interpolation of `m` about `anchor`, plus t * offset. The linear part is
/// rebuilt from its definition: R(t theta) [[1, t h], [0, 1]] diag(sx(t), sy(t)).
inline Point2 moved_point(const Point2& p,
                          const sketchanim::GlobalTransform& m,
                          const Point2& offset,
                          const Point2& anchor,
                          double t) {
    const double sx = 1.0 + t * (m.scale_x - 1.0);
    const double sy = 1.0 + t * (m.scale_y - 1.0);
    const double h = t * m.shear;
    const double th = t * m.rotation;
    const double dx = p.x - anchor.x;
    const double dy = p.y - anchor.y;
    // shear * scale
    const double ux = sx * dx + h * sy * dy;
    const double uy = sy * dy;
    const double rx = std::cos(th) * ux - std::sin(th) * uy;
    const double ry = std::sin(th) * ux + std::cos(th) * uy;
    return {anchor.x + t * m.translate.x + rx + t * offset.x, anchor.y + t * m.translate.y + ry + t * offset.y};
}

/// Dense midpoint double integral of |df/du x df/dt| on an n x n grid, with
/// partial derivatives by central differences of the explicit surface.
inline double brute_force_sweep(const CubicBezier& c,
                                const sketchanim::GlobalTransform& m,
                                const std::array<Point2, 4>& offsets,
                                const Point2& anchor,
                                int n) {
    const auto surface = [&](double u, double t) {
        std::array<Point2, 4> q;
        for (int j = 0; j < 4; ++j) {
            q[j] = moved_point(c.control[j], m, offsets[j], anchor, t);
        }
        return casteljau(q, u);
    };
    const double h = 1e-6;
    double sum = 0.0;
    for (int it = 0; it < n; ++it) {
        const double t = (it + 0.5) / n;
        for (int iu = 0; iu < n; ++iu) {
            const double u = (iu + 0.5) / n;
            const Point2 pu1 = surface(u + h, t);
            const Point2 pu0 = surface(u - h, t);
            const Point2 pt1 = surface(u, t + h);
            const Point2 pt0 = surface(u, t - h);
            const double fux = (pu1.x - pu0.x) / (2 * h);
            const double fuy = (pu1.y - pu0.y) / (2 * h);
            const double ftx = (pt1.x - pt0.x) / (2 * h);
            const double fty = (pt1.y - pt0.y) / (2 * h);
            sum += std::abs(fux * fty - fuy * ftx);
        }
    }
    return sum / (static_cast<double>(n) * n);
}

/// Circumcircle test in long double by explicit circumcenter; true when d is
/// strictly inside by more than `tol` relative to the radius.
inline bool strictly_inside_circumcircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d, double tol) {
    const long double ax = a.x, ay = a.y, bx = b.x, by = b.y, cx = c.x, cy = c.y;
    const long double den = 2.0L * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const long double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const long double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den;
    const long double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den;
    const long double r = std::hypot(ax - ux, ay - uy);
    const long double dist = std::hypot(d.x - ux, d.y - uy);
    return dist < r * (1.0L - tol);
}

using Triple = std::array<int, 3>;

inline Triple sorted_triple(int a, int b, int c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

/// Every non-degenerate triple whose circumcircle holds no other point:
/// the Delaunay triangulation for points in general position. O(n^4).
inline std::set<Triple> exhaustive_delaunay(std::span<const Point2> pts, double tol = 1e-9) {
    std::set<Triple> out;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                const double area2 = (pts[j].x - pts[i].x) * (pts[k].y - pts[i].y)
                                     - (pts[j].y - pts[i].y) * (pts[k].x - pts[i].x);
                if (std::abs(area2) < 1e-12) {
                    continue;
                }
                bool empty = true;
                for (int m = 0; m < n && empty; ++m) {
                    if (m != i && m != j && m != k && strictly_inside_circumcircle(pts[i], pts[j], pts[k], pts[m], tol)) {
                        empty = false;
                    }
                }
                if (empty) {
                    out.insert(sorted_triple(i, j, k));
                }
            }
        }
    }
    return out;
}

inline std::set<Triple> mesh_triples(const sketchanim::TriangleMesh& mesh) {
    std::set<Triple> out;
    for (const auto& t : mesh.triangles) {
        out.insert(sorted_triple(t[0], t[1], t[2]));
    }
    return out;
}

/// Central difference of f at x along one coordinate.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// max |a - b| / max(max |a|, max |b|); 0 when both are zero.
inline double relative_error(std::span<const double> a, std::span<const double> b) {
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    }
    return scale == 0.0 ? diff : diff / scale;
}

/// Flattens a point grid as x, y, x, y, ...
inline std::vector<double> flatten(const sketchanim::PointGrid& g) {
    std::vector<double> out;
    for (const auto& row : g) {
        for (const Point2& p : row) {
            out.push_back(p.x);
            out.push_back(p.y);
        }
    }
    return out;
}

inline double& coord(Point2& p, int axis) {
    return axis == 0 ? p.x : p.y;
}

} // namespace testsupport
