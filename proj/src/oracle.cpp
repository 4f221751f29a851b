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

#include <sketchanim/oracle.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/frames.hpp>
#include <sketchanim/text.hpp>

#include <cmath>
#include <set>

namespace sketchanim {

namespace {

void check_same_shape(const SketchVideo& video, const SketchVideo& targets) {
    if (video.frame_count() != targets.frame_count() || video.stroke_count() != targets.stroke_count()) {
        throw_shape_mismatch("oracle targets are " + std::to_string(targets.frame_count()) + " frames x "
                             + std::to_string(targets.stroke_count()) + " strokes, video is "
                             + std::to_string(video.frame_count()) + " x " + std::to_string(video.stroke_count()));
    }
}

class TargetOracle : public GuidanceOracle {
public:
    TargetOracle(SketchVideo targets, double weight)
        : targets_(std::move(targets))
        , weight_(weight) {
    }

    GuidanceResult evaluate(const SketchVideo& video) const override {
        check_same_shape(video, targets_);
        const double coords = 2.0 * static_cast<double>(video.frame_count() * video.point_count());
        const double scale = weight_ / coords;
        GuidanceResult out;
        out.gradient = video.zero_grid();
        double sum = 0.0;
        for (std::size_t i = 0; i < video.frame_count(); ++i) {
            for (std::size_t j = 0; j < video.point_count(); ++j) {
                const Point2 r = video.frames[i].point(j) - targets_.frames[i].point(j);
                sum += dot(r, r);
                out.gradient[i][j] = (2.0 * scale) * r;
            }
        }
        out.loss = scale * sum;
        return out;
    }

    std::string name() const override {
        return "target";
    }

private:
    SketchVideo targets_;
    double weight_;
};

double number_arg(const OracleSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.args.find(key);
    if (it == spec.args.end()) {
        return fallback;
    }
    const auto v = parse_number(it->second);
    if (!v || !std::isfinite(*v)) {
        throw Error(ErrorCode::InvalidArgument,
                    "oracle '" + spec.name + "': argument " + key + "=" + it->second + " is not a number");
    }
    return *v;
}

void allow_only(const OracleSpec& spec, std::initializer_list<std::string_view> keys) {
    for (const auto& [key, value] : spec.args) {
        bool known = false;
        for (std::string_view k : keys) {
            known = known || key == k;
        }
        if (!known) {
            throw Error(ErrorCode::InvalidArgument, "oracle '" + spec.name + "': unknown argument '" + key + "'");
        }
    }
}

double weight_arg(const OracleSpec& spec) {
    const double w = number_arg(spec, "weight", 1.0);
    if (w < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "oracle '" + spec.name + "': weight must be non-negative");
    }
    return w;
}

} // namespace

std::unique_ptr<GuidanceOracle> make_target_oracle(SketchVideo targets, double weight) {
    targets.validate();
    return std::make_unique<TargetOracle>(std::move(targets), weight);
}

RigidMotionOracle::RigidMotionOracle(double angular_velocity, Point2 translation_velocity, double weight)
    : angular_velocity_(angular_velocity)
    , translation_velocity_(translation_velocity)
    , weight_(weight) {
}

std::string RigidMotionOracle::name() const {
    return "rigid";
}

SketchVideo RigidMotionOracle::targets_for(const SketchFrame& rest, std::size_t frames) const {
    SketchVideo out;
    const Point2 c = frame_centroid(rest);
    for (std::size_t i = 0; i < frames; ++i) {
        const double step = static_cast<double>(i);
        const Mat2 delta = Mat2::rotation(step * angular_velocity_) - Mat2::identity();
        const Point2 shift = step * translation_velocity_;
        SketchFrame f = rest;
        for (std::size_t j = 0; j < rest.point_count(); ++j) {
            const Point2& p = rest.point(j);
            f.point(j) = p + (shift + delta * (p - c));
        }
        out.frames.push_back(std::move(f));
    }
    return out;
}

GuidanceResult RigidMotionOracle::evaluate(const SketchVideo& video) const {
    video.validate();
    const std::size_t n = video.frame_count();
    const std::size_t count = video.point_count();
    const SketchVideo targets = targets_for(video.frames.front(), n);
    const double coords = 2.0 * static_cast<double>(n * count);
    const double two_scale = 2.0 * weight_ / coords;

    GuidanceResult out;
    out.gradient = video.zero_grid();
    double sum = 0.0;
    std::vector<Point2>& g0 = out.gradient.front();
    const double inv_count = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < n; ++i) {
        const Mat2 rot = Mat2::rotation(static_cast<double>(i) * angular_velocity_);
        Point2 residual_sum;
        for (std::size_t j = 0; j < count; ++j) {
            const Point2 r = video.frames[i].point(j) - targets.frames[i].point(j);
            sum += dot(r, r);
            residual_sum += r;
            out.gradient[i][j] += two_scale * r;
            // Targets depend on frame 0: d target_ij / d p0_k = delta_jk R_i + (I - R_i) / count.
            g0[j] -= two_scale * (rot.transposed() * r);
        }
        const Point2 through_centroid = inv_count * ((Mat2::identity() - rot).transposed() * residual_sum);
        for (std::size_t j = 0; j < count; ++j) {
            g0[j] -= two_scale * through_centroid;
        }
    }
    out.loss = 0.5 * two_scale * sum;
    return out;
}

std::unique_ptr<GuidanceOracle> make_rigid_motion_oracle(double angular_velocity,
                                                         Point2 translation_velocity,
                                                         double weight) {
    return std::make_unique<RigidMotionOracle>(angular_velocity, translation_velocity, weight);
}

std::unique_ptr<GuidanceOracle> make_static_oracle(double weight) {
    return std::make_unique<RigidMotionOracle>(0.0, Point2{}, weight);
}

OracleSpec OracleSpec::parse(std::string_view text) {
    OracleSpec spec;
    const std::size_t colon = text.find(':');
    spec.name = std::string(text.substr(0, colon));
    if (spec.name.empty()) {
        throw Error(ErrorCode::InvalidArgument, "oracle selector has no name: '" + std::string(text) + "'");
    }
    if (colon == std::string_view::npos) {
        return spec;
    }
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw Error(ErrorCode::InvalidArgument, "oracle argument '" + std::string(item) + "' is not key=value");
        }
        spec.args[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    return spec;
}

std::string OracleSpec::to_string() const {
    std::string out = name;
    char sep = ':';
    for (const auto& [key, value] : args) {
        out += sep + key + "=" + value;
        sep = ',';
    }
    return out;
}

void OracleRegistry::add(std::string name, Factory factory) {
    factories_[std::move(name)] = std::move(factory);
}

bool OracleRegistry::contains(const std::string& name) const {
    return factories_.contains(name);
}

std::vector<std::string> OracleRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, factory] : factories_) {
        out.push_back(name);
    }
    return out;
}

std::unique_ptr<GuidanceOracle> OracleRegistry::create(const OracleSpec& spec) const {
    const auto it = factories_.find(spec.name);
    if (it == factories_.end()) {
        throw Error(ErrorCode::InvalidArgument, "unknown oracle '" + spec.name + "'");
    }
    return it->second(spec);
}

const OracleRegistry& OracleRegistry::builtin() {
    static const OracleRegistry registry = [] {
        OracleRegistry r;
        r.add("rigid", [](const OracleSpec& spec) {
            allow_only(spec, {"angle", "tx", "ty", "weight"});
            return make_rigid_motion_oracle(number_arg(spec, "angle", 0.0),
                                            {number_arg(spec, "tx", 0.0), number_arg(spec, "ty", 0.0)},
                                            weight_arg(spec));
        });
        r.add("static", [](const OracleSpec& spec) {
            allow_only(spec, {"weight"});
            return make_static_oracle(weight_arg(spec));
        });
        r.add("target", [](const OracleSpec& spec) {
            allow_only(spec, {"dir", "weight"});
            const auto dir = spec.args.find("dir");
            if (dir == spec.args.end()) {
                throw Error(ErrorCode::InvalidArgument, "oracle 'target' needs dir=<frame directory>");
            }
            return make_target_oracle(load_frame_sequence(dir->second), weight_arg(spec));
        });
        return r;
    }();
    return registry;
}

} // namespace sketchanim
