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

#include <sketchanim/metrics.hpp>

#include <sketchanim/delaunay.hpp>
#include <sketchanim/error.hpp>
#include <sketchanim/log.hpp>
#include <sketchanim/sweep.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace sketchanim {

MetricsReport compute_metrics(const SketchVideo& video, FitMode fit_mode, const QuadratureSpec& q) {
    video.validate();
    q.validate();
    const std::size_t n = video.frame_count();
    const std::size_t k = video.stroke_count();
    const std::size_t pts = video.point_count();

    MetricsReport r;
    r.frame_count = n;
    r.stroke_lengths.assign(n, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            r.stroke_lengths[i][s] = curve_length(video.frames[i].strokes[s], q);
        }
    }

    double dev_sum = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            const double d = std::abs(r.stroke_lengths[i][s] - r.stroke_lengths[0][s]);
            r.max_length_deviation = std::max(r.max_length_deviation, d);
            dev_sum += d;
        }
    }
    r.mean_length_deviation = dev_sum / static_cast<double>((n - 1) * k);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t s = 0; s < k; ++s) {
            r.total_swept_area += swept_area_between(video.frames[i].strokes[s], video.frames[i + 1].strokes[s], q);
        }
    }

    r.arap_energy.assign(n, 0.0);
    const std::vector<Point2> rest = video.frames.front().points();
    TriangleMesh mesh;
    try {
        mesh = delaunay_triangulate(rest);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooFewPoints && e.code() != ErrorCode::AllCollinear) {
            throw;
        }
        log_warning(std::string("ARAP energy reported as zero: ") + e.what());
    }
    if (!mesh.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            r.arap_energy[i] = arap_frame_energy(mesh, rest, video.frames[i].points(), fit_mode);
            if (i > 0) {
                r.total_arap_energy += r.arap_energy[i];
            }
        }
    }

    double speed_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j < pts; ++j) {
            speed_sum += norm(video.frames[i + 1].point(j) - video.frames[i].point(j));
        }
    }
    r.mean_speed = speed_sum / static_cast<double>((n - 1) * pts);

    if (n >= 3) {
        double acc_sum = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            for (std::size_t j = 0; j < pts; ++j) {
                const Point2 a = video.frames[i + 1].point(j) - 2.0 * video.frames[i].point(j)
                                 + video.frames[i - 1].point(j);
                acc_sum += norm(a);
            }
        }
        r.mean_acceleration = acc_sum / static_cast<double>((n - 2) * pts);
    }
    return r;
}

nlohmann::json metrics_to_json(const MetricsReport& r) {
    nlohmann::json j;
    j["schema"] = kMetricsSchema;
    j["frame_count"] = r.frame_count;
    j["stroke_lengths"] = r.stroke_lengths;
    j["max_length_deviation"] = r.max_length_deviation;
    j["mean_length_deviation"] = r.mean_length_deviation;
    j["total_swept_area"] = r.total_swept_area;
    j["arap_energy"] = r.arap_energy;
    j["total_arap_energy"] = r.total_arap_energy;
    j["mean_speed"] = r.mean_speed;
    j["mean_acceleration"] = r.mean_acceleration;
    return j;
}

} // namespace sketchanim
