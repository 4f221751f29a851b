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

#include <array>

namespace sketchanim {

/// Per-frame global motion: scale, shear, rotation (radians) and translation.
///
/// The linear part is composed as rotate * shear * scale and is applied about
/// an anchor point (the frame centroid), after which the translation is added.
struct GlobalTransform {
    double scale_x = 1.0;
    double scale_y = 1.0;
    double shear = 0.0;
    double rotation = 0.0;
    Point2 translate{};

    /// R(rotation) * [[1, shear], [0, 1]] * diag(scale_x, scale_y).
    Mat2 linear() const;

    /// Throws InvalidArgument on non-finite fields or non-positive scales.
    void validate() const;

    bool is_identity() const;

    /// Parameter-space interpolation between the identity (t = 0) and this
    /// transform (t = 1).
    GlobalTransform interpolated(double t) const;

    friend bool operator==(const GlobalTransform&, const GlobalTransform&) = default;
};

/// Index of each transform parameter in a TransformGrad.
enum TransformParam : int {
    ScaleX = 0,
    ScaleY = 1,
    Shear = 2,
    Rotation = 3,
    TranslateX = 4,
    TranslateY = 5,
};

/// Gradient (or any per-parameter quantity) for one GlobalTransform.
using TransformGrad = std::array<double, 6>;

/// Partial derivatives of GlobalTransform::linear() w.r.t. its parameters.
struct LinearJacobian {
    Mat2 d_scale_x;
    Mat2 d_scale_y;
    Mat2 d_shear;
    Mat2 d_rotation;
};

LinearJacobian linear_jacobian(const GlobalTransform& m);

/// Maps an upstream gradient on the linear part to the four linear parameters
/// and adds it into grad.
void accumulate_linear_grad(const GlobalTransform& m, const Mat2& d_linear, TransformGrad& grad);

/// anchor + translate + A (p - anchor), evaluated as p + (translate + (A - I)(p - anchor))
/// so that the identity transform reproduces p bit-exactly.
Point2 apply_about(const GlobalTransform& m, const Mat2& linear, const Point2& p, const Point2& anchor);

} // namespace sketchanim
