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

#include <sketchanim/train.hpp>

#include <sketchanim/adam.hpp>
#include <sketchanim/error.hpp>
#include <sketchanim/log.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace sketchanim {

void TrainConfig::validate() const {
    if (iterations < 1) {
        throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
    }
    if (frames < 2) {
        throw Error(ErrorCode::InvalidArgument, "frames must be at least 2");
    }
    if (log_every < 0) {
        throw Error(ErrorCode::InvalidArgument, "log_every must be non-negative");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw Error(ErrorCode::InvalidArgument, "learning rate must be positive and finite");
    }
    motion.validate();
    quadrature.validate();
}

double scheduled_learning_rate(const TrainConfig& cfg, int iter) {
    if (!cfg.cosine_decay) {
        return cfg.learning_rate;
    }
    const double progress = static_cast<double>(iter) / static_cast<double>(cfg.iterations);
    return cfg.learning_rate * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

namespace {

SketchVideo refine_video(const MotionParams& params, const SketchVideo& composed) {
    SketchVideo out;
    out.frames.reserve(composed.frames.size());
    out.frames.push_back(composed.frames.front());
    for (std::size_t i = 1; i < composed.frames.size(); ++i) {
        out.frames.push_back(refine(params, composed.frames[i]));
    }
    return out;
}

void check_finite(double value, int iter, const char* what) {
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "non-finite " << what << " loss at iteration " << iter;
        throw NonFiniteLossError(iter, msg.str());
    }
}

void add_transform_grads(std::vector<TransformGrad>& dst, const std::vector<TransformGrad>& src) {
    for (std::size_t i = 0; i < src.size(); ++i) {
        for (std::size_t j = 0; j < dst[i].size(); ++j) {
            dst[i][j] += src[i][j];
        }
    }
}

void step_range(AdamState& state,
                std::vector<double>& flat,
                const std::vector<double>& grad,
                std::pair<std::size_t, std::size_t> range) {
    const std::size_t len = range.second - range.first;
    adam_step(state,
              std::span<double>(flat).subspan(range.first, len),
              std::span<const double>(grad).subspan(range.first, len));
}

} // namespace

SketchVideo render_video(const MotionParams& params, const SketchFrame& sketch, const TrainConfig& cfg) {
    const MotionOutput out = forward(params, sketch, cfg.frames);
    SketchVideo video = compose_video(sketch, out.transforms, out.offsets, cfg.composition);
    if (cfg.wiring == Wiring::PostHocRefine) {
        video = refine_video(params, video);
    }
    return video;
}

TrainReport train(const SketchFrame& sketch,
                  const GuidanceOracle& oracle,
                  const LaConfig& la,
                  const ArapConfig& arap,
                  const TrainConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    sketch.validate();
    la.validate();
    arap.validate();
    cfg.validate();

    const std::vector<Point2> rest_points = sketch.points();
    TrainReport report;
    report.seed = cfg.seed;
    report.mesh = delaunay_triangulate(rest_points);
    if (report.mesh.empty()) {
        throw Error(ErrorCode::EmptyMesh, "no triangle could be built on the sketch control points");
    }
    const TriangleMesh& mesh = report.mesh;

    MotionParams params = MotionParams::create(cfg.motion, sketch.point_count(), cfg.frames, cfg.seed);
    std::vector<double> flat = params.flatten();
    const bool use_path = cfg.composition == Composition::Recurrent;

    AdamState full_state = AdamState::zeros(flat.size(), cfg.learning_rate);
    const auto motion_range = params.motion_range();
    const auto refine_range = params.refine_range();
    AdamState motion_state = AdamState::zeros(motion_range.second - motion_range.first, cfg.learning_rate);
    AdamState refine_state = AdamState::zeros(refine_range.second - refine_range.first, cfg.learning_rate);

    report.history.reserve(static_cast<std::size_t>(cfg.iterations));
    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const double lr = scheduled_learning_rate(cfg, iter);
        MotionTape tape;
        MotionOutput out = forward(params, sketch, cfg.frames, &tape);
        SketchVideo video = compose_video(sketch, out.transforms, out.offsets, cfg.composition);

        if (cfg.wiring == Wiring::Joint) {
            const MotionPath path{out.transforms, &out.offsets};
            TotalLossResult res =
                total_loss(video, use_path ? &path : nullptr, la, arap, oracle, mesh, sketch, cfg.quadrature);
            check_finite(res.breakdown.total, iter, "total");
            report.history.push_back(res.breakdown);

            ComposeGrad cg = compose_video_backward(video, out.transforms, res.grad.frames, cfg.composition);
            if (!res.grad.transforms.empty()) {
                add_transform_grads(cg.transforms, res.grad.transforms);
                add_into(cg.offsets, res.grad.offsets);
            }
            const std::vector<double> grad = backward(params, tape, cg.transforms, cg.offsets).flatten();
            full_state.lr = lr;
            adam_step(full_state, flat, grad);
            params.assign(flat);
        } else {
            // Guidance step on the shared, local and global branches.
            const GuidanceResult guide = oracle.evaluate(video);
            check_finite(guide.loss, iter, "guidance");
            ComposeGrad cg = compose_video_backward(video, out.transforms, guide.gradient, cfg.composition);
            const std::vector<double> motion_grad = backward(params, tape, cg.transforms, cg.offsets).flatten();
            motion_state.lr = lr;
            step_range(motion_state, flat, motion_grad, motion_range);
            params.assign(flat);

            // Regularizer step on the refinement head over the recomposed frames.
            out = forward(params, sketch, cfg.frames);
            video = compose_video(sketch, out.transforms, out.offsets, cfg.composition);
            const SketchVideo refined = refine_video(params, video);
            LaResult la_res = la_loss(refined, nullptr, la, cfg.quadrature);
            const ArapResult arap_res = arap_loss(mesh, sketch, refined, arap);

            LossBreakdown b;
            b.length_term = la_res.length_sum;
            b.area_term = la_res.area_sum;
            b.arap_term = arap_res.energy;
            b.guidance_term = guide.loss;
            b.total = weighted_total(b, la, arap);
            check_finite(b.total, iter, "total");
            report.history.push_back(b);

            PointGrid& frame_grad = la_res.grad.frames;
            for (std::size_t i = 1; i < frame_grad.size(); ++i) {
                for (std::size_t j = 0; j < frame_grad[i].size(); ++j) {
                    frame_grad[i][j] += arap.lambda_arap * arap_res.grad[i][j];
                }
            }
            MotionParams refine_grad = params.zeros_like();
            for (std::size_t i = 1; i < video.frames.size(); ++i) {
                refine_backward(params, video.frames[i], frame_grad[i], refine_grad);
            }
            refine_state.lr = lr;
            step_range(refine_state, flat, refine_grad.flatten(), refine_range);
            params.assign(flat);
        }

        if (cfg.log_every > 0 && (iter % cfg.log_every == 0 || iter + 1 == cfg.iterations)) {
            const LossBreakdown& b = report.history.back();
            std::ostringstream msg;
            msg << "iter " << iter << " total " << b.total << " guidance " << b.guidance_term << " length "
                << b.length_term << " area " << b.area_term << " arap " << b.arap_term;
            log_info(msg.str());
        }
    }

    // Final evaluation on the trained parameters.
    MotionOutput out = forward(params, sketch, cfg.frames);
    SketchVideo video = compose_video(sketch, out.transforms, out.offsets, cfg.composition);
    const bool final_path = use_path && cfg.wiring == Wiring::Joint;
    if (cfg.wiring == Wiring::PostHocRefine) {
        video = refine_video(params, video);
    }
    const MotionPath path{out.transforms, &out.offsets};
    const TotalLossResult final_res =
        total_loss(video, final_path ? &path : nullptr, la, arap, oracle, mesh, sketch, cfg.quadrature);
    check_finite(final_res.breakdown.total, cfg.iterations, "final");
    report.final_loss = final_res.breakdown;
    report.final_arap = arap_loss(mesh, sketch, video, arap).per_frame;
    report.final_video = std::move(video);
    report.transforms = std::move(out.transforms);
    report.offsets = std::move(out.offsets);
    report.params = std::move(params);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace sketchanim
