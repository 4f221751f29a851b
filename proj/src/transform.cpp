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

#include <sketchanim/transform.hpp>

#include <sketchanim/error.hpp>

#include <cmath>

namespace sketchanim {

Mat2 GlobalTransform::linear() const {
    const Mat2 k{scale_x, shear * scale_y, 0.0, scale_y};
    return Mat2::rotation(rotation) * k;
}

void GlobalTransform::validate() const {
    const bool finite = std::isfinite(scale_x) && std::isfinite(scale_y) && std::isfinite(shear)
                        && std::isfinite(rotation) && is_finite(translate);
    if (!finite) {
        throw Error(ErrorCode::InvalidArgument, "global transform has non-finite parameters");
    }
    if (!(scale_x > 0.0) || !(scale_y > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "global transform scales must be positive");
    }
}

bool GlobalTransform::is_identity() const {
    return scale_x == 1.0 && scale_y == 1.0 && shear == 0.0 && rotation == 0.0
           && translate == Point2{};
}

GlobalTransform GlobalTransform::interpolated(double t) const {
    GlobalTransform r;
    r.scale_x = 1.0 + t * (scale_x - 1.0);
    r.scale_y = 1.0 + t * (scale_y - 1.0);
    r.shear = t * shear;
    r.rotation = t * rotation;
    r.translate = t * translate;
    return r;
}

LinearJacobian linear_jacobian(const GlobalTransform& m) {
    const Mat2 rot = Mat2::rotation(m.rotation);
    const Mat2 k{m.scale_x, m.shear * m.scale_y, 0.0, m.scale_y};
    LinearJacobian j;
    j.d_rotation = Mat2::rotation_derivative(m.rotation) * k;
    j.d_scale_x = rot * Mat2{1.0, 0.0, 0.0, 0.0};
    j.d_scale_y = rot * Mat2{0.0, m.shear, 0.0, 1.0};
    j.d_shear = rot * Mat2{0.0, m.scale_y, 0.0, 0.0};
    return j;
}

void accumulate_linear_grad(const GlobalTransform& m, const Mat2& d_linear, TransformGrad& grad) {
    const LinearJacobian j = linear_jacobian(m);
    grad[ScaleX] += frobenius(d_linear, j.d_scale_x);
    grad[ScaleY] += frobenius(d_linear, j.d_scale_y);
    grad[Shear] += frobenius(d_linear, j.d_shear);
    grad[Rotation] += frobenius(d_linear, j.d_rotation);
}

Point2 apply_about(const GlobalTransform& m, const Mat2& linear, const Point2& p, const Point2& anchor) {
    const Mat2 delta = linear - Mat2::identity();
    return p + (m.translate + delta * (p - anchor));
}

} // namespace sketchanim
