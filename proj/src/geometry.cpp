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

#include <sketchanim/geometry.hpp>

#include <sketchanim/error.hpp>

#include <string>

namespace sketchanim {

void QuadratureSpec::validate() const {
    if (samples_u < 2 || samples_t < 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "quadrature sample counts must be >= 2 (got samples_u="
                        + std::to_string(samples_u) + ", samples_t=" + std::to_string(samples_t)
                        + ")");
    }
}

std::array<double, 4> bernstein(double u) {
    const double v = 1.0 - u;
    return {v * v * v, 3.0 * u * v * v, 3.0 * u * u * v, u * u * u};
}

std::array<double, 4> bernstein_derivative(double u) {
    const double v = 1.0 - u;
    return {-3.0 * v * v, 3.0 * v * v - 6.0 * u * v, 6.0 * u * v - 3.0 * u * u, 3.0 * u * u};
}

namespace {

Point2 combine(const std::array<double, 4>& w, const std::array<Point2, 4>& p) {
    Point2 r;
    for (int j = 0; j < 4; ++j) {
        r.x += w[j] * p[j].x;
        r.y += w[j] * p[j].y;
    }
    return r;
}

} // namespace

Point2 eval_bezier(const CubicBezier& c, double u) {
    return combine(bernstein(u), c.control);
}

Point2 bezier_velocity(const CubicBezier& c, double u) {
    return combine(bernstein_derivative(u), c.control);
}

double curve_length(const CubicBezier& c, const QuadratureSpec& q) {
    q.validate();
    const double h = 1.0 / q.samples_u;
    double sum = 0.0;
    for (int k = 0; k < q.samples_u; ++k) {
        const double u = (k + 0.5) * h;
        sum += norm(bezier_velocity(c, u));
    }
    return sum * h;
}

double curve_length(const CubicBezier& c, const QuadratureSpec& q, std::array<Point2, 4>& grad) {
    q.validate();
    grad.fill({});
    const double h = 1.0 / q.samples_u;
    double sum = 0.0;
    for (int k = 0; k < q.samples_u; ++k) {
        const double u = (k + 0.5) * h;
        const auto dw = bernstein_derivative(u);
        const Point2 v = combine(dw, c.control);
        const double speed = norm(v);
        sum += speed;
        if (speed > 0.0) {
            const Point2 unit = (h / speed) * v;
            for (int j = 0; j < 4; ++j) {
                grad[j] += dw[j] * unit;
            }
        }
    }
    return sum * h;
}

BernsteinTable::BernsteinTable(int samples)
    : weight(1.0 / samples) {
    nodes.reserve(samples);
    basis.reserve(samples);
    derivative.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double u = (k + 0.5) * weight;
        nodes.push_back(u);
        basis.push_back(bernstein(u));
        derivative.push_back(bernstein_derivative(u));
    }
}

Point2 centroid(std::span<const Point2> points) {
    Point2 sum;
    for (const Point2& p : points) {
        sum += p;
    }
    if (points.empty()) {
        return sum;
    }
    const auto n = static_cast<double>(points.size());
    return {sum.x / n, sum.y / n};
}

} // namespace sketchanim
