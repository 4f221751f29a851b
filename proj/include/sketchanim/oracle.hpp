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

#include <sketchanim/sketch.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sketchanim {

struct GuidanceResult {
    double loss = 0.0;
    PointGrid gradient; // same shape as the evaluated video
};

/// Source of the guidance term: a scalar loss over a sketch video and its
/// exact gradient w.r.t. every control point of every frame.
///
/// Implementations that wrap a denoising model can report their noise level,
/// schedule weight and prompt; the synthetic oracles here leave them empty.
class GuidanceOracle {
public:
    virtual ~GuidanceOracle() = default;

    /// Throws ShapeMismatch when the video does not fit the oracle.
    virtual GuidanceResult evaluate(const SketchVideo& video) const = 0;

    virtual std::string name() const = 0;

    virtual std::optional<double> noise_level() const {
        return std::nullopt;
    }
    virtual std::optional<double> schedule_weight() const {
        return std::nullopt;
    }
    virtual std::optional<std::string> prompt() const {
        return std::nullopt;
    }
};

/// weight * mean over all coordinates of the squared distance to `targets`.
std::unique_ptr<GuidanceOracle> make_target_oracle(SketchVideo targets, double weight);

/// Target oracle whose targets are frame 0 of the evaluated video moved by a
/// cumulative rigid motion: frame i is rotated by i * angular_velocity about
/// the frame-0 centroid and shifted by i * translation_velocity. The gradient
/// includes the dependence of the targets on frame 0.
class RigidMotionOracle : public GuidanceOracle {
public:
    RigidMotionOracle(double angular_velocity, Point2 translation_velocity, double weight);

    GuidanceResult evaluate(const SketchVideo& video) const override;
    std::string name() const override;

    SketchVideo targets_for(const SketchFrame& rest, std::size_t frames) const;

    double angular_velocity() const {
        return angular_velocity_;
    }
    Point2 translation_velocity() const {
        return translation_velocity_;
    }
    double weight() const {
        return weight_;
    }

private:
    double angular_velocity_;
    Point2 translation_velocity_;
    double weight_;
};

std::unique_ptr<GuidanceOracle> make_rigid_motion_oracle(double angular_velocity,
                                                         Point2 translation_velocity,
                                                         double weight);

/// Rigid oracle with zero velocities: pulls every frame toward frame 0.
std::unique_ptr<GuidanceOracle> make_static_oracle(double weight);

/// Parsed "name:key=value,key=value" oracle selector.
struct OracleSpec {
    std::string name;
    std::map<std::string, std::string> args;

    /// Throws InvalidArgument on a malformed selector.
    static OracleSpec parse(std::string_view text);
    std::string to_string() const;
};

/// Name-keyed oracle factories. The built-in registry knows "target"
/// (args: dir, weight), "rigid" (angle, tx, ty, weight) and "static" (weight).
class OracleRegistry {
public:
    using Factory = std::function<std::unique_ptr<GuidanceOracle>(const OracleSpec&)>;

    void add(std::string name, Factory factory);
    bool contains(const std::string& name) const;
    std::vector<std::string> names() const;

    /// Throws InvalidArgument for unknown names or bad arguments.
    std::unique_ptr<GuidanceOracle> create(const OracleSpec& spec) const;

    static const OracleRegistry& builtin();

private:
    std::map<std::string, Factory> factories_;
};

} // namespace sketchanim
