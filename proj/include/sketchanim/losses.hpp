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

#include <sketchanim/delaunay.hpp>
#include <sketchanim/geometry.hpp>
#include <sketchanim/sketch.hpp>
#include <sketchanim/transform.hpp>

#include <span>
#include <vector>

namespace sketchanim {

class GuidanceOracle;

enum class LengthAnchor {
    /// |L_i - L_0| for every frame i >= 1.
    InitialFrame,
    /// |L_i - L_{i-1}| for every frame i >= 1.
    PreviousFrame,
};

struct LaConfig {
    double lambda_l = 0.1;
    double lambda_a = 1e-5;
    LengthAnchor length_anchor = LengthAnchor::InitialFrame;

    void validate() const;
};

enum class FitMode {
    RotationOnly,
    /// Best rotation, then one isotropic scale fitted given that rotation.
    RotationThenScale,
};

struct ArapConfig {
    double lambda_arap = 0.1;
    FitMode fit_mode = FitMode::RotationThenScale;

    void validate() const;
};

/// The per-interval motion that produced a recurrently composed video. When
/// supplied to la_loss, the swept surface of interval i follows the global
/// transform and offsets of that interval; otherwise control points move on
/// straight lines between consecutive frames.
struct MotionPath {
    std::span<const GlobalTransform> transforms;
    const LocalOffsets* offsets = nullptr;
};

/// Gradient of a scalar w.r.t. every trajectory quantity.
struct TrajectoryGrad {
    PointGrid frames;                       // n x 4k
    std::vector<TransformGrad> transforms;  // n-1 (empty without a MotionPath)
    LocalOffsets offsets;                   // (n-1) x 4k (empty without a MotionPath)
};

struct LaResult {
    double value = 0.0;       // lambda_l * length_sum + lambda_a * area_sum
    double length_sum = 0.0;  // sum of |length deviation| over frames >= 1 and strokes
    double area_sum = 0.0;    // sum of swept areas over intervals and strokes
    TrajectoryGrad grad;      // gradient of value
};

/// Length-area regularizer. Throws ShapeMismatch when the video or path is
/// inconsistent.
LaResult la_loss(const SketchVideo& video,
                 const MotionPath* path,
                 const LaConfig& cfg,
                 const QuadratureSpec& q = {});

struct ArapResult {
    double energy = 0.0;            // unweighted, summed over frames >= 1
    std::vector<double> per_frame;  // n entries; entry 0 is the rest frame's own energy
    PointGrid grad;                 // gradient of energy; row 0 is zero
};

/// Per-triangle best-fit ARAP energy of every frame against `rest`, on the
/// fixed topology `mesh`. Throws EmptyMesh or ShapeMismatch.
ArapResult arap_loss(const TriangleMesh& mesh,
                     const SketchFrame& rest,
                     const SketchVideo& video,
                     const ArapConfig& cfg);

/// Energy of one frame against the rest frame, with optional gradient.
double arap_frame_energy(const TriangleMesh& mesh,
                         std::span<const Point2> rest,
                         std::span<const Point2> deformed,
                         FitMode mode,
                         std::vector<Point2>* grad = nullptr);

/// Raw per-term losses; `total` applies the lambda weights.
struct LossBreakdown {
    double length_term = 0.0;
    double area_term = 0.0;
    double arap_term = 0.0;
    double guidance_term = 0.0;
    double total = 0.0;
};

double weighted_total(const LossBreakdown& b, const LaConfig& la, const ArapConfig& arap);

struct TotalLossResult {
    LossBreakdown breakdown;
    TrajectoryGrad grad;
};

/// guidance + lambda_l * length + lambda_a * area + lambda_arap * arap, with
/// the gradient summed as (la + lambda_arap * arap) + guidance.
TotalLossResult total_loss(const SketchVideo& video,
                           const MotionPath* path,
                           const LaConfig& la,
                           const ArapConfig& arap,
                           const GuidanceOracle& oracle,
                           const TriangleMesh& mesh,
                           const SketchFrame& rest,
                           const QuadratureSpec& q = {});

} // namespace sketchanim
