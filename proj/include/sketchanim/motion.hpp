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

#include <sketchanim/mlp.hpp>
#include <sketchanim/sketch.hpp>
#include <sketchanim/transform.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace sketchanim {

struct EncodingSpec {
    int num_frequencies = 6;
    bool include_input = true;

    /// Feature length for one scalar coordinate.
    int scalar_dim() const {
        return (include_input ? 1 : 0) + 2 * num_frequencies;
    }
    /// Feature length for a 2D point.
    int point_dim() const {
        return 2 * scalar_dim();
    }
    void validate() const;
};

/// Sinusoidal features of a canvas point. Coordinates are first mapped from
/// [0, 256] to [-1, 1]; per coordinate the layout is
/// [v, sin(pi v), cos(pi v), sin(2 pi v), cos(2 pi v), ...].
std::vector<double> positional_encode(const Point2& p, const EncodingSpec& spec);

/// Sinusoidal features of a scalar already in the unit range.
std::vector<double> scalar_encode(double v, const EncodingSpec& spec);

struct MotionConfig {
    EncodingSpec encoding;
    int hidden_width = 64;
    int hidden_layers = 2;
    int feature_dim = 128;
    bool zero_init_final = true;

    void validate() const;
};

/// Every trainable quantity of the motion model.
///
/// shared:  point encoding -> feature (dimension feature_dim)
/// local:   [feature; frame encoding] -> offset (2) for one point and interval
/// global:  [mean feature; frame encoding] -> (log sx, log sy, shear, rotation, tx, ty)
/// refine:  point encoding -> residual correction (2)
struct MotionParams {
    MotionConfig config;
    std::size_t point_count = 0;
    std::size_t frame_count = 0;
    Mlp shared;
    Mlp local;
    Mlp global;
    Mlp refine;

    /// Builds seeded parameters bound to a sketch of `points` control points
    /// animated over `frames` frames.
    static MotionParams create(const MotionConfig& config, std::size_t points, std::size_t frames, std::uint64_t seed);

    /// Same shapes, all zero; used as a gradient accumulator.
    MotionParams zeros_like() const;

    std::size_t parameter_count() const;

    /// Flat parameter vector in declaration order: shared, local, global, refine.
    std::vector<double> flatten() const;
    void assign(std::span<const double> values);

    /// Parameter ranges [begin, end) within flatten() of the motion branches
    /// (shared, local, global) and the refinement head.
    std::pair<std::size_t, std::size_t> motion_range() const;
    std::pair<std::size_t, std::size_t> refine_range() const;
};

struct MotionOutput {
    std::vector<GlobalTransform> transforms; // n - 1
    LocalOffsets offsets;                    // (n - 1) x 4k
};

/// Intermediate values kept for the reverse pass.
struct MotionTape {
    Mlp::Tape shared;
    Mlp::Tape local;
    Mlp::Tape global;
    std::vector<GlobalTransform> transforms;
};

/// Runs the motion model for the initial frame. Throws ShapeMismatch when the
/// parameters are bound to a different sketch shape.
MotionOutput forward(const MotionParams& params, const SketchFrame& initial, std::size_t frames, MotionTape* tape = nullptr);

/// Reverse pass using a tape recorded by forward().
MotionParams backward(const MotionParams& params,
                      const MotionTape& tape,
                      std::span<const TransformGrad> transform_grad,
                      const LocalOffsets& offset_grad);

/// Reverse pass that recomputes the forward tape.
MotionParams backward(const MotionParams& params,
                      const SketchFrame& initial,
                      std::size_t frames,
                      std::span<const TransformGrad> transform_grad,
                      const LocalOffsets& offset_grad);

/// Frame-wise residual correction: p + refine(encode(p)) for every point.
SketchFrame refine(const MotionParams& params, const SketchFrame& frame);

/// Reverse pass of refine(): accumulates into `param_grad` and, when given,
/// writes the gradient w.r.t. the input points into `point_grad`.
void refine_backward(const MotionParams& params,
                     const SketchFrame& frame,
                     std::span<const Point2> upstream,
                     MotionParams& param_grad,
                     std::vector<Point2>* point_grad = nullptr);

/// Binary checkpoint: "SMV1" followed by the flat parameter vector as
/// little-endian IEEE-754 doubles.
void save_checkpoint(const std::filesystem::path& path, const MotionParams& params);

/// Loads into `params`, whose shapes must match the file. Throws Io or
/// ShapeMismatch.
void load_checkpoint(const std::filesystem::path& path, MotionParams& params);

} // namespace sketchanim
