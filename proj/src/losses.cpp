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

#include <sketchanim/losses.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/oracle.hpp>
#include <sketchanim/sweep.hpp>

#include <cmath>
#include <string>

namespace sketchanim {

namespace {

void require_weight(double w, const char* name) {
    if (!std::isfinite(w) || w < 0.0) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a finite non-negative number");
    }
}

} // namespace

void LaConfig::validate() const {
    require_weight(lambda_l, "lambda_l");
    require_weight(lambda_a, "lambda_a");
}

void ArapConfig::validate() const {
    require_weight(lambda_arap, "lambda_arap");
}

LaResult la_loss(const SketchVideo& video, const MotionPath* path, const LaConfig& cfg, const QuadratureSpec& q) {
    video.validate();
    cfg.validate();
    q.validate();
    const std::size_t n = video.frame_count();
    const std::size_t k = video.stroke_count();
    const std::size_t count = video.point_count();
    if (path) {
        if (path->transforms.size() + 1 != n || !path->offsets || path->offsets->size() + 1 != n) {
            throw_shape_mismatch("motion path must have frame count - 1 intervals");
        }
        for (const auto& row : *path->offsets) {
            if (row.size() != count) {
                throw_shape_mismatch("motion path offsets do not match the point count");
            }
        }
    }

    LaResult result;
    result.grad.frames = video.zero_grid();
    if (path) {
        result.grad.transforms.assign(n - 1, TransformGrad{});
        result.grad.offsets.assign(n - 1, std::vector<Point2>(count));
    }

    // Length term.
    std::vector<std::vector<double>> lengths(n, std::vector<double>(k));
    std::vector<std::vector<std::array<Point2, 4>>> length_grads(n, std::vector<std::array<Point2, 4>>(k));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            lengths[i][s] = curve_length(video.frames[i].strokes[s], q, length_grads[i][s]);
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t ref = cfg.length_anchor == LengthAnchor::InitialFrame ? 0 : i - 1;
        for (std::size_t s = 0; s < k; ++s) {
            const double diff = lengths[i][s] - lengths[ref][s];
            result.length_sum += std::abs(diff);
            if (diff == 0.0 || cfg.lambda_l == 0.0) {
                continue;
            }
            const double sign = diff > 0.0 ? cfg.lambda_l : -cfg.lambda_l;
            for (int j = 0; j < 4; ++j) {
                result.grad.frames[i][4 * s + j] += sign * length_grads[i][s][j];
                result.grad.frames[ref][4 * s + j] -= sign * length_grads[ref][s][j];
            }
        }
    }

    // Area term, frame-major then stroke-minor.
    const bool want_area_grad = cfg.lambda_a != 0.0;
    const double inv_count = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const SketchFrame& base = video.frames[i];
        const Point2 anchor = path ? frame_centroid(base) : Point2{};
        Point2 anchor_grad;
        for (std::size_t s = 0; s < k; ++s) {
            if (path) {
                const auto& row = (*path->offsets)[i];
                const std::span<const Point2, 4> offs(row.data() + 4 * s, 4);
                SweepGrad g;
                result.area_sum +=
                    swept_area(base.strokes[s], path->transforms[i], offs, anchor, q, want_area_grad ? &g : nullptr);
                if (!want_area_grad) {
                    continue;
                }
                for (int j = 0; j < 4; ++j) {
                    result.grad.frames[i][4 * s + j] += cfg.lambda_a * g.control[j];
                    result.grad.offsets[i][4 * s + j] += cfg.lambda_a * g.offsets[j];
                }
                for (int p = 0; p < 6; ++p) {
                    result.grad.transforms[i][p] += cfg.lambda_a * g.transform[p];
                }
                anchor_grad += cfg.lambda_a * g.anchor;
            } else {
                std::array<Point2, 4> g_from;
                std::array<Point2, 4> g_to;
                result.area_sum += swept_area_between(base.strokes[s],
                                                      video.frames[i + 1].strokes[s],
                                                      q,
                                                      want_area_grad ? &g_from : nullptr,
                                                      want_area_grad ? &g_to : nullptr);
                if (!want_area_grad) {
                    continue;
                }
                for (int j = 0; j < 4; ++j) {
                    result.grad.frames[i][4 * s + j] += cfg.lambda_a * g_from[j];
                    result.grad.frames[i + 1][4 * s + j] += cfg.lambda_a * g_to[j];
                }
            }
        }
        if (path && want_area_grad) {
            const Point2 share = inv_count * anchor_grad;
            for (std::size_t j = 0; j < count; ++j) {
                result.grad.frames[i][j] += share;
            }
        }
    }

    result.value = cfg.lambda_l * result.length_sum + cfg.lambda_a * result.area_sum;
    return result;
}

double arap_frame_energy(const TriangleMesh& mesh,
                         std::span<const Point2> rest,
                         std::span<const Point2> deformed,
                         FitMode mode,
                         std::vector<Point2>* grad) {
    double energy = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        std::array<Point2, 3> e;
        std::array<Point2, 3> ed;
        std::array<double, 3> alpha;
        for (int m = 0; m < 3; ++m) {
            const int from = tri[m];
            const int to = tri[(m + 1) % 3];
            e[m] = rest[to] - rest[from];
            ed[m] = deformed[to] - deformed[from];
            alpha[m] = mesh.edges[mesh.triangle_edges[t][m]].weight;
        }

        // Best rotation maximizes tr(R^T S), S = sum alpha e' e^T.
        double x = 0.0; // S00 + S11
        double y = 0.0; // S10 - S01
        double rest_norm = 0.0;
        for (int m = 0; m < 3; ++m) {
            x += alpha[m] * dot(ed[m], e[m]);
            y += alpha[m] * cross(e[m], ed[m]);
            rest_norm += alpha[m] * dot(e[m], e[m]);
        }
        const double rho2 = x * x + y * y;
        const double theta = rho2 > 0.0 ? std::atan2(y, x) : 0.0;
        const Mat2 rot = Mat2::rotation(theta);
        const Mat2 drot = Mat2::rotation_derivative(theta);
        double scale = 1.0;
        if (mode == FitMode::RotationThenScale) {
            double fit = 0.0;
            for (int m = 0; m < 3; ++m) {
                fit += alpha[m] * dot(ed[m], rot * e[m]);
            }
            scale = fit / rest_norm;
        }

        std::array<Point2, 3> residual;
        for (int m = 0; m < 3; ++m) {
            residual[m] = ed[m] - scale * (rot * e[m]);
            energy += alpha[m] * dot(residual[m], residual[m]);
        }
        if (!grad) {
            continue;
        }

        // Explicit dependence plus the chain through theta(S) and scale(S).
        double d_theta = 0.0;
        double d_scale = 0.0;
        for (int m = 0; m < 3; ++m) {
            d_theta += -2.0 * alpha[m] * scale * dot(residual[m], drot * e[m]);
            d_scale += -2.0 * alpha[m] * dot(residual[m], rot * e[m]);
        }
        for (int m = 0; m < 3; ++m) {
            Point2 g = 2.0 * alpha[m] * residual[m];
            if (rho2 > 0.0) {
                const Point2 dx = alpha[m] * e[m];
                const Point2 dy{-alpha[m] * e[m].y, alpha[m] * e[m].x};
                g += (d_theta / rho2) * (x * dy - y * dx);
                if (mode == FitMode::RotationThenScale) {
                    // scale = hypot(x, y) / rest_norm
                    g += (d_scale / (std::sqrt(rho2) * rest_norm)) * (x * dx + y * dy);
                }
            }
            (*grad)[tri[(m + 1) % 3]] += g;
            (*grad)[tri[m]] -= g;
        }
    }
    return energy;
}

ArapResult arap_loss(const TriangleMesh& mesh, const SketchFrame& rest, const SketchVideo& video, const ArapConfig& cfg) {
    if (mesh.empty()) {
        throw Error(ErrorCode::EmptyMesh, "ARAP mesh has no triangles");
    }
    video.validate();
    cfg.validate();
    const std::size_t count = video.point_count();
    if (rest.point_count() != count || static_cast<std::size_t>(mesh.vertex_count) != count) {
        throw_shape_mismatch("ARAP mesh, rest frame and video disagree on the point count");
    }

    const std::vector<Point2> rest_pts = rest.points();
    ArapResult result;
    result.grad = video.zero_grid();
    result.per_frame.assign(video.frame_count(), 0.0);
    for (std::size_t i = 0; i < video.frame_count(); ++i) {
        const std::vector<Point2> pts = video.frames[i].points();
        const double e = arap_frame_energy(mesh, rest_pts, pts, cfg.fit_mode, i > 0 ? &result.grad[i] : nullptr);
        result.per_frame[i] = e;
        if (i > 0) {
            result.energy += e;
        }
    }
    return result;
}

double weighted_total(const LossBreakdown& b, const LaConfig& la, const ArapConfig& arap) {
    return b.guidance_term + la.lambda_l * b.length_term + la.lambda_a * b.area_term + arap.lambda_arap * b.arap_term;
}

TotalLossResult total_loss(const SketchVideo& video,
                           const MotionPath* path,
                           const LaConfig& la,
                           const ArapConfig& arap,
                           const GuidanceOracle& oracle,
                           const TriangleMesh& mesh,
                           const SketchFrame& rest,
                           const QuadratureSpec& q) {
    LaResult la_part = la_loss(video, path, la, q);
    const ArapResult arap_part = arap_loss(mesh, rest, video, arap);
    const GuidanceResult guide = oracle.evaluate(video);

    TotalLossResult out;
    out.breakdown.length_term = la_part.length_sum;
    out.breakdown.area_term = la_part.area_sum;
    out.breakdown.arap_term = arap_part.energy;
    out.breakdown.guidance_term = guide.loss;
    out.breakdown.total = weighted_total(out.breakdown, la, arap);

    out.grad = std::move(la_part.grad);
    for (std::size_t i = 0; i < out.grad.frames.size(); ++i) {
        for (std::size_t j = 0; j < out.grad.frames[i].size(); ++j) {
            out.grad.frames[i][j] += arap.lambda_arap * arap_part.grad[i][j];
            out.grad.frames[i][j] += guide.gradient[i][j];
        }
    }
    return out;
}

} // namespace sketchanim
