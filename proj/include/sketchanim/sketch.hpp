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
#include <sketchanim/transform.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sketchanim {

/// Passthrough drawing attributes; they never influence geometry.
struct StrokeStyle {
    std::string color = "black";
    double width = 1.5;

    friend bool operator==(const StrokeStyle&, const StrokeStyle&) = default;
};

/// The control points of one frame: k strokes, 4k points. Point i is
/// control point i % 4 of stroke i / 4.
struct SketchFrame {
    std::vector<CubicBezier> strokes;
    std::vector<StrokeStyle> styles; // empty, or one per stroke

    std::size_t stroke_count() const {
        return strokes.size();
    }
    std::size_t point_count() const {
        return 4 * strokes.size();
    }
    const Point2& point(std::size_t i) const {
        return strokes[i / 4].control[i % 4];
    }
    Point2& point(std::size_t i) {
        return strokes[i / 4].control[i % 4];
    }
    std::vector<Point2> points() const;

    /// Rebuilds a frame from a flat point list (size must be a positive
    /// multiple of four).
    static SketchFrame from_points(std::span<const Point2> points, std::vector<StrokeStyle> styles = {});

    /// Throws EmptySketch for k = 0 and InvalidArgument for non-finite points.
    void validate() const;

    friend bool operator==(const SketchFrame&, const SketchFrame&) = default;
};

/// Per-frame, per-point 2D quantities: positions, offsets or gradients.
using PointGrid = std::vector<std::vector<Point2>>;

/// Local displacements: one row per frame interval (frames 1..n-1), one entry
/// per control point.
using LocalOffsets = PointGrid;

/// n frames sharing one stroke topology.
struct SketchVideo {
    std::vector<SketchFrame> frames;

    std::size_t frame_count() const {
        return frames.size();
    }
    std::size_t stroke_count() const {
        return frames.empty() ? 0 : frames.front().stroke_count();
    }
    std::size_t point_count() const {
        return 4 * stroke_count();
    }

    /// Throws ShapeMismatch unless n >= 2 and every frame has the same k.
    void validate() const;

    /// A zero-filled grid shaped like this video.
    PointGrid zero_grid() const;

    friend bool operator==(const SketchVideo&, const SketchVideo&) = default;
};

/// How frames are generated from the per-interval motion.
enum class Composition {
    /// p_{i+1} = M_i p_i + dp_i about the centroid of frame i.
    Recurrent,
    /// p_{i+1} = M_i p_0 + dp_i about the centroid of frame 0.
    Anchored,
};

Point2 frame_centroid(const SketchFrame& frame);

/// Builds the n-frame video (n = transforms.size() + 1) from the initial
/// frame. Throws ShapeMismatch when offsets are not (n-1) x 4k.
SketchVideo compose_video(const SketchFrame& initial,
                          std::span<const GlobalTransform> transforms,
                          const LocalOffsets& offsets,
                          Composition composition = Composition::Recurrent);

struct ComposeGrad {
    std::vector<TransformGrad> transforms;
    LocalOffsets offsets;
};

/// Reverse pass of compose_video: maps a gradient on the frames of `video`
/// (the forward result) to the transforms and offsets. The row for frame 0 of
/// `upstream` is ignored because frame 0 is the fixed input.
ComposeGrad compose_video_backward(const SketchVideo& video,
                                   std::span<const GlobalTransform> transforms,
                                   const PointGrid& upstream,
                                   Composition composition = Composition::Recurrent);

void add_into(PointGrid& dst, const PointGrid& src);

} // namespace sketchanim
