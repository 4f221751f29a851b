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

#include <sketchanim/delaunay.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/log.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace sketchanim {

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    return alift * (bdx * cdy - bdy * cdx) + blift * (cdx * ady - cdy * adx)
           + clift * (adx * bdy - ady * bdx);
}

double incircle_magnitude(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    return alift * (std::abs(bdx * cdy) + std::abs(bdy * cdx))
           + blift * (std::abs(cdx * ady) + std::abs(cdy * adx))
           + clift * (std::abs(adx * bdy) + std::abs(ady * bdx));
}

namespace {

constexpr double kCocircularTolerance = 1e-12;
constexpr double kDegenerateArea = 1e-12;

using Tri = std::array<int, 3>;

double hull_area(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& p, const Point2& q) {
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    });
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);
    double twice = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        twice += cross(hull[i], hull[(i + 1) % hull.size()]);
    }
    return 0.5 * twice;
}

// Bowyer-Watson over `pts` with a super-triangle scaled by `spread`.
// Returns std::nullopt when the result does not tile the convex hull.
std::optional<std::vector<Tri>> bowyer_watson(const std::vector<Point2>& pts, double spread) {
    const int m = static_cast<int>(pts.size());
    double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
    for (const Point2& p : pts) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    const double extent = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
    const Point2 mid{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};

    std::vector<Point2> all = pts;
    all.push_back({mid.x - spread * extent, mid.y - extent});
    all.push_back({mid.x + spread * extent, mid.y - extent});
    all.push_back({mid.x, mid.y + spread * extent});

    std::vector<Tri> tris{{m, m + 1, m + 2}};
    for (int i = 0; i < m; ++i) {
        const Point2& p = all[i];
        std::vector<Tri> keep;
        std::vector<Tri> bad;
        for (const Tri& t : tris) {
            if (incircle(all[t[0]], all[t[1]], all[t[2]], p) > 0.0) {
                bad.push_back(t);
            } else {
                keep.push_back(t);
            }
        }
        // Cavity boundary: directed edges whose reverse is not in another bad triangle.
        std::map<std::pair<int, int>, int> directed;
        for (const Tri& t : bad) {
            for (int k = 0; k < 3; ++k) {
                directed[{t[k], t[(k + 1) % 3]}] += 1;
            }
        }
        for (const Tri& t : bad) {
            for (int k = 0; k < 3; ++k) {
                const int u = t[k];
                const int v = t[(k + 1) % 3];
                if (!directed.contains({v, u})) {
                    keep.push_back({u, v, i});
                }
            }
        }
        tris = std::move(keep);
    }

    std::vector<Tri> out;
    for (const Tri& t : tris) {
        if (t[0] < m && t[1] < m && t[2] < m) {
            out.push_back(t);
        }
    }

    std::vector<bool> used(m, false);
    double area = 0.0;
    for (const Tri& t : out) {
        const double a = orient2d(pts[t[0]], pts[t[1]], pts[t[2]]);
        if (a < 0.0) {
            return std::nullopt;
        }
        area += 0.5 * a;
        for (int v : t) {
            used[v] = true;
        }
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) {
        return std::nullopt;
    }
    const double hull = hull_area(pts);
    if (std::abs(area - hull) > 1e-9 * hull) {
        return std::nullopt;
    }
    return out;
}

// Lawson flips until every interior edge is locally Delaunay, with cocircular
// quads resolved toward the diagonal that touches the lowest original index.
void legalize(std::vector<Tri>& tris, const std::vector<Point2>& pts, const std::vector<int>& original) {
    const int max_flips = 100 * static_cast<int>(tris.size()) + 100;
    for (int flips = 0; flips < max_flips; ++flips) {
        std::map<std::pair<int, int>, std::pair<int, int>> owner; // directed edge -> (tri, slot)
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            for (int k = 0; k < 3; ++k) {
                owner[{tris[t][k], tris[t][(k + 1) % 3]}] = {t, k};
            }
        }
        bool flipped = false;
        for (const auto& [edge, where] : owner) {
            const auto [a, b] = edge;
            if (a > b) {
                continue;
            }
            const auto twin = owner.find({b, a});
            if (twin == owner.end()) {
                continue;
            }
            const auto [t1, k1] = where;
            const auto [t2, k2] = twin->second;
            const int c = tris[t1][(k1 + 2) % 3];
            const int d = tris[t2][(k2 + 2) % 3];
            const Point2 &pa = pts[a], &pb = pts[b], &pc = pts[c], &pd = pts[d];
            if (!(orient2d(pa, pd, pc) > 0.0 && orient2d(pd, pb, pc) > 0.0)) {
                continue;
            }
            const double det = incircle(pa, pb, pc, pd);
            const double tol = kCocircularTolerance * incircle_magnitude(pa, pb, pc, pd);
            bool flip = det > tol;
            if (!flip && std::abs(det) <= tol) {
                flip = std::min(original[c], original[d]) < std::min(original[a], original[b]);
            }
            if (flip) {
                tris[t1] = {a, d, c};
                tris[t2] = {d, b, c};
                flipped = true;
                break;
            }
        }
        if (!flipped) {
            return;
        }
    }
    log_warning("delaunay: flip limit reached; triangulation may not be fully legal");
}

} // namespace

TriangleMesh delaunay_triangulate(std::span<const Point2> points) {
    const int n = static_cast<int>(points.size());
    if (n < 3) {
        throw Error(ErrorCode::TooFewPoints, "delaunay: need at least 3 points, got " + std::to_string(n));
    }
    for (const Point2& p : points) {
        if (!is_finite(p)) {
            throw Error(ErrorCode::InvalidArgument, "delaunay: non-finite point");
        }
    }

    std::vector<Point2> unique;
    std::vector<int> original;
    for (int i = 0; i < n; ++i) {
        if (std::find(unique.begin(), unique.end(), points[i]) == unique.end()) {
            unique.push_back(points[i]);
            original.push_back(i);
        }
    }
    if (unique.size() < 3) {
        throw Error(ErrorCode::TooFewPoints,
                    "delaunay: need at least 3 distinct points, got " + std::to_string(unique.size()));
    }

    // Collinearity: measure every point against the longest chord from the first.
    std::size_t far = 1;
    for (std::size_t i = 1; i < unique.size(); ++i) {
        if (norm(unique[i] - unique[0]) > norm(unique[far] - unique[0])) {
            far = i;
        }
    }
    const double chord = norm(unique[far] - unique[0]);
    double max_offset = 0.0;
    for (const Point2& p : unique) {
        max_offset = std::max(max_offset, std::abs(orient2d(unique[0], unique[far], p)) / chord);
    }
    if (max_offset <= 1e-12 * chord) {
        throw Error(ErrorCode::AllCollinear, "delaunay: all points are collinear");
    }

    std::optional<std::vector<Tri>> tris;
    for (double spread = 20.0; !tris && spread < 1e9; spread *= 8.0) {
        tris = bowyer_watson(unique, spread);
    }
    if (!tris) {
        throw Error(ErrorCode::InvalidArgument, "delaunay: triangulation did not cover the convex hull");
    }
    legalize(*tris, unique, original);

    TriangleMesh mesh;
    mesh.vertex_count = n;
    std::map<std::pair<int, int>, int> edge_ids;
    for (const Tri& t : *tris) {
        const double area = 0.5 * orient2d(unique[t[0]], unique[t[1]], unique[t[2]]);
        if (area < kDegenerateArea) {
            log_warning("delaunay: dropping degenerate triangle (" + std::to_string(original[t[0]]) + ", "
                        + std::to_string(original[t[1]]) + ", " + std::to_string(original[t[2]]) + ")");
            continue;
        }
        const std::array<int, 3> tri{original[t[0]], original[t[1]], original[t[2]]};
        std::array<int, 3> ids{};
        for (int k = 0; k < 3; ++k) {
            const int u = std::min(tri[k], tri[(k + 1) % 3]);
            const int v = std::max(tri[k], tri[(k + 1) % 3]);
            auto [it, inserted] = edge_ids.try_emplace({u, v}, static_cast<int>(mesh.edges.size()));
            if (inserted) {
                mesh.edges.push_back({u, v, norm(points[v] - points[u])});
            }
            ids[k] = it->second;
        }
        mesh.triangles.push_back(tri);
        mesh.triangle_edges.push_back(ids);
    }
    return mesh;
}

} // namespace sketchanim
