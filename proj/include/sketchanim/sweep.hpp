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
#include <sketchanim/transform.hpp>

#include <array>
#include <span>

namespace sketchanim {

/// Gradient of swept_area w.r.t. every input it reads.
struct SweepGrad {
    std::array<Point2, 4> control{};
    std::array<Point2, 4> offsets{};
    TransformGrad transform{};
    Point2 anchor{};
};

/// Area of the space-time surface traced by one stroke over a unit frame
/// interval.
///
/// Control points move as p_j(t) = M(t) p_j + t * offsets[j] for t in [0, 1],
/// where M(t) is `transform` interpolated in parameter space from the identity
/// and applied about `anchor`. The integrand is |df/du x df/dt| evaluated with
/// the composite midpoint rule in both directions. When `grad` is non-null it
/// receives the exact gradient of the discrete sum.
double swept_area(const CubicBezier& c,
                  const GlobalTransform& transform,
                  std::span<const Point2, 4> offsets,
                  const Point2& anchor,
                  const QuadratureSpec& q,
                  SweepGrad* grad = nullptr);

/// Swept area of the straight-line interpolation between two strokes
/// (identity transform, offsets = to - from).
double swept_area_between(const CubicBezier& from,
                          const CubicBezier& to,
                          const QuadratureSpec& q,
                          std::array<Point2, 4>* grad_from = nullptr,
                          std::array<Point2, 4>* grad_to = nullptr);

} // namespace sketchanim
