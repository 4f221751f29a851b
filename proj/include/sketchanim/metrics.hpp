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
#include <sketchanim/losses.hpp>
#include <sketchanim/sketch.hpp>

#include <json.hpp>

#include <vector>

namespace sketchanim {

inline constexpr int kMetricsSchema = 1;

/// Geometry-only quality measures of a sketch video.
struct MetricsReport {
    std::size_t frame_count = 0;
    std::vector<std::vector<double>> stroke_lengths; // n x k
    double max_length_deviation = 0.0;  // max |L_i - L_0| over frames >= 1 and strokes
    double mean_length_deviation = 0.0; // mean of the same deviations
    double total_swept_area = 0.0;      // straight-line sweeps between consecutive frames
    std::vector<double> arap_energy;    // n entries, against frame 0
    double total_arap_energy = 0.0;     // sum over frames >= 1
    double mean_speed = 0.0;            // mean |p_{i+1} - p_i|
    double mean_acceleration = 0.0;     // mean |p_{i+1} - 2 p_i + p_{i-1}|; 0 when n < 3
};

/// ARAP energies use the Delaunay mesh of frame 0. When frame 0 admits no
/// triangle (fewer than three distinct or all collinear control points) they
/// are reported as zero with a warning.
MetricsReport compute_metrics(const SketchVideo& video,
                              FitMode fit_mode = FitMode::RotationThenScale,
                              const QuadratureSpec& q = {});

nlohmann::json metrics_to_json(const MetricsReport& report);

} // namespace sketchanim
