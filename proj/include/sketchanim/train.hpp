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
#include <sketchanim/losses.hpp>
#include <sketchanim/motion.hpp>
#include <sketchanim/oracle.hpp>
#include <sketchanim/sketch.hpp>

#include <cstdint>
#include <vector>

namespace sketchanim {

/// Which parameters the regularizers update.
enum class Wiring {
    /// Guidance, LA and ARAP gradients all flow into every motion branch.
    Joint,
    /// Guidance updates the shared/local/global branches; LA and ARAP update
    /// only the refinement head applied to the composed frames.
    PostHocRefine,
};

struct TrainConfig {
    int iterations = 1000;
    std::size_t frames = 24;
    Wiring wiring = Wiring::Joint;
    std::uint64_t seed = 0;
    int log_every = 0; // 0 disables progress logging
    double learning_rate = 1e-3;
    bool cosine_decay = false;
    Composition composition = Composition::Recurrent;
    MotionConfig motion;
    QuadratureSpec quadrature;

    void validate() const;
};

struct TrainReport {
    std::vector<LossBreakdown> history; // one entry per iteration, before its update
    SketchVideo final_video;
    LossBreakdown final_loss;           // evaluated on final_video
    std::vector<double> final_arap;     // per-frame ARAP energy of final_video
    MotionParams params;
    std::vector<GlobalTransform> transforms;
    LocalOffsets offsets;
    TriangleMesh mesh;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Learning rate of iteration `iter` (0-based).
double scheduled_learning_rate(const TrainConfig& cfg, int iter);

/// Optimizes the motion model for `sketch`. Throws NonFiniteLossError when a
/// loss evaluation is not finite, EmptyMesh when no triangle can be built on
/// the control points, and propagates validation errors.
TrainReport train(const SketchFrame& sketch,
                  const GuidanceOracle& oracle,
                  const LaConfig& la,
                  const ArapConfig& arap,
                  const TrainConfig& cfg);

/// The video produced by `params` for `sketch` under `cfg`, including the
/// refinement head for PostHocRefine.
SketchVideo render_video(const MotionParams& params, const SketchFrame& sketch, const TrainConfig& cfg);

} // namespace sketchanim
