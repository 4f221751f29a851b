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

#include <sketchanim/sketch.hpp>

#include <sketchanim/error.hpp>

#include <string>

namespace sketchanim {

std::vector<Point2> SketchFrame::points() const {
    std::vector<Point2> out;
    out.reserve(point_count());
    for (const CubicBezier& c : strokes) {
        out.insert(out.end(), c.control.begin(), c.control.end());
    }
    return out;
}

SketchFrame SketchFrame::from_points(std::span<const Point2> points, std::vector<StrokeStyle> styles) {
    if (points.empty() || points.size() % 4 != 0) {
        throw_shape_mismatch("point count " + std::to_string(points.size()) + " is not a positive multiple of 4");
    }
    SketchFrame frame;
    frame.strokes.resize(points.size() / 4);
    for (std::size_t i = 0; i < points.size(); ++i) {
        frame.point(i) = points[i];
    }
    frame.styles = std::move(styles);
    return frame;
}

void SketchFrame::validate() const {
    if (strokes.empty()) {
        throw Error(ErrorCode::EmptySketch, "sketch frame has no strokes");
    }
    if (!styles.empty() && styles.size() != strokes.size()) {
        throw_shape_mismatch("style count does not match stroke count");
    }
    for (const CubicBezier& c : strokes) {
        for (const Point2& p : c.control) {
            if (!is_finite(p)) {
                throw Error(ErrorCode::InvalidArgument, "sketch frame has a non-finite control point");
            }
        }
    }
}

void SketchVideo::validate() const {
    if (frames.size() < 2) {
        throw_shape_mismatch("a video needs at least 2 frames, got " + std::to_string(frames.size()));
    }
    const std::size_t k = frames.front().stroke_count();
    for (const SketchFrame& f : frames) {
        f.validate();
        if (f.stroke_count() != k) {
            throw_shape_mismatch("stroke count varies across frames");
        }
    }
}

PointGrid SketchVideo::zero_grid() const {
    return PointGrid(frame_count(), std::vector<Point2>(point_count()));
}

Point2 frame_centroid(const SketchFrame& frame) {
    const std::vector<Point2> pts = frame.points();
    return centroid(pts);
}

namespace {

void check_motion_shape(std::size_t points, std::span<const GlobalTransform> transforms, const LocalOffsets& offsets) {
    if (offsets.size() != transforms.size()) {
        throw_shape_mismatch("expected " + std::to_string(transforms.size()) + " offset rows, got "
                             + std::to_string(offsets.size()));
    }
    for (const auto& row : offsets) {
        if (row.size() != points) {
            throw_shape_mismatch("offset row has " + std::to_string(row.size()) + " entries, expected "
                                 + std::to_string(points));
        }
    }
}

} // namespace

SketchVideo compose_video(const SketchFrame& initial,
                          std::span<const GlobalTransform> transforms,
                          const LocalOffsets& offsets,
                          Composition composition) {
    initial.validate();
    const std::size_t count = initial.point_count();
    check_motion_shape(count, transforms, offsets);

    SketchVideo video;
    video.frames.reserve(transforms.size() + 1);
    video.frames.push_back(initial);
    const Point2 origin_anchor = frame_centroid(initial);
    for (std::size_t i = 0; i < transforms.size(); ++i) {
        const SketchFrame& base = composition == Composition::Recurrent ? video.frames[i] : initial;
        const Point2 anchor = composition == Composition::Recurrent ? frame_centroid(base) : origin_anchor;
        const GlobalTransform& m = transforms[i];
        const Mat2 lin = m.linear();
        SketchFrame next = base;
        for (std::size_t j = 0; j < count; ++j) {
            next.point(j) = apply_about(m, lin, base.point(j), anchor) + offsets[i][j];
        }
        video.frames.push_back(std::move(next));
    }
    return video;
}

ComposeGrad compose_video_backward(const SketchVideo& video,
                                   std::span<const GlobalTransform> transforms,
                                   const PointGrid& upstream,
                                   Composition composition) {
    const std::size_t n = video.frame_count();
    const std::size_t count = video.point_count();
    if (transforms.size() + 1 != n) {
        throw_shape_mismatch("transform count must be frame count - 1");
    }
    if (upstream.size() != n) {
        throw_shape_mismatch("upstream gradient frame count differs from video");
    }
    for (const auto& row : upstream) {
        if (row.size() != count) {
            throw_shape_mismatch("upstream gradient point count differs from video");
        }
    }

    ComposeGrad out;
    out.transforms.assign(n - 1, TransformGrad{});
    out.offsets.assign(n - 1, std::vector<Point2>(count));

    // Accumulated gradient on each frame, including contributions flowing
    // back from later frames in the recurrent case.
    PointGrid carried = upstream;
    const double inv_count = 1.0 / static_cast<double>(count);
    for (std::size_t step = n - 1; step-- > 0;) {
        const std::size_t base_index = composition == Composition::Recurrent ? step : 0;
        const SketchFrame& base = video.frames[base_index];
        const Point2 anchor = frame_centroid(base);
        const GlobalTransform& m = transforms[step];
        const Mat2 lin = m.linear();
        const Mat2 lin_t = lin.transposed();
        const std::vector<Point2>& g = carried[step + 1];

        Mat2 d_lin = Mat2::zero();
        Point2 g_sum;
        for (std::size_t j = 0; j < count; ++j) {
            out.offsets[step][j] = g[j];
            g_sum += g[j];
            d_lin += Mat2::outer(g[j], base.point(j) - anchor);
        }
        TransformGrad& tg = out.transforms[step];
        tg[TranslateX] += g_sum.x;
        tg[TranslateY] += g_sum.y;
        accumulate_linear_grad(m, d_lin, tg);

        if (composition == Composition::Recurrent && step > 0) {
            // d/dp_j of A (p_j - c) + c with c the mean of the base frame.
            const Point2 through_anchor = inv_count * ((Mat2::identity() - lin).transposed() * g_sum);
            for (std::size_t j = 0; j < count; ++j) {
                carried[step][j] += lin_t * g[j] + through_anchor;
            }
        }
    }
    return out;
}

void add_into(PointGrid& dst, const PointGrid& src) {
    if (dst.size() != src.size()) {
        throw_shape_mismatch("grid frame counts differ");
    }
    for (std::size_t i = 0; i < dst.size(); ++i) {
        if (dst[i].size() != src[i].size()) {
            throw_shape_mismatch("grid point counts differ");
        }
        for (std::size_t j = 0; j < dst[i].size(); ++j) {
            dst[i][j] += src[i][j];
        }
    }
}

} // namespace sketchanim
