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

#include <sketchanim/geometry.hpp>

#include <array>
#include <span>
#include <vector>

namespace sketchanim {

/// Undirected mesh edge with its rest-length weight (a < b).
struct MeshEdge {
    int a = 0;
    int b = 0;
    double weight = 0.0;
};

/// Triangulation of a frame's control points. Triangles are counter-clockwise
/// index triples into the frame's point list; each undirected edge is stored
/// once. `triangle_edges[t][k]` is the edge id of the side from vertex k to
/// vertex (k + 1) % 3 of triangle t.
struct TriangleMesh {
    int vertex_count = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<MeshEdge> edges;
    std::vector<std::array<int, 3>> triangle_edges;

    bool empty() const {
        return triangles.empty();
    }
};

/// Positive when a, b, c are counter-clockwise.
double orient2d(const Point2& a, const Point2& b, const Point2& c);

/// Positive when d lies strictly inside the circumcircle of the
/// counter-clockwise triangle (a, b, c).
double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Sum of absolute values of the terms of incircle(); a scale for relative
/// tolerances.
double incircle_magnitude(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

/// Delaunay triangulation (Bowyer-Watson followed by Lawson legalization).
///
/// Coincident points are triangulated once, through their lowest index; the
/// other copies stay out of the mesh. Cocircular ties pick the diagonal that
/// touches the lowest vertex index. Triangles with area below 1e-12 are
/// dropped with a warning. Edge weights are rest edge lengths.
///
/// Throws TooFewPoints (fewer than three distinct points) or AllCollinear.
TriangleMesh delaunay_triangulate(std::span<const Point2> points);

} // namespace sketchanim
