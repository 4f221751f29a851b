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

#include <sketchanim/sweep.hpp>

#include <cmath>

namespace sketchanim {

namespace {

// Linear part A(t) of the interpolated transform, its time derivative, and
// the partials of both w.r.t. the four linear parameters of the full-frame
// transform. With phi = theta t, a = 1 + t (sx - 1), b = 1 + t (sy - 1),
// eta = h t:  A = R(phi) K,  K = [[a, eta b], [0, b]].
struct TimeLinear {
    Mat2 value;
    Mat2 rate;
    std::array<Mat2, 4> d_value; // indexed by TransformParam (ScaleX..Rotation)
    std::array<Mat2, 4> d_rate;
};

TimeLinear time_linear(const GlobalTransform& m, double t) {
    const double theta = m.rotation;
    const double h = m.shear;
    const double dsx = m.scale_x - 1.0;
    const double dsy = m.scale_y - 1.0;
    const double phi = theta * t;
    const double a = 1.0 + t * dsx;
    const double b = 1.0 + t * dsy;
    const double eta = h * t;

    const Mat2 rot = Mat2::rotation(phi);
    const Mat2 drot = Mat2::rotation_derivative(phi);
    const Mat2 k{a, eta * b, 0.0, b};
    const Mat2 k_rate{dsx, h * b + eta * dsy, 0.0, dsy};

    TimeLinear r;
    r.value = rot * k;
    r.rate = theta * (drot * k) + rot * k_rate;

    // Parameters that enter only through K.
    auto through_k = [&](const Mat2& dk, const Mat2& dk_rate, int index) {
        r.d_value[index] = rot * dk;
        r.d_rate[index] = theta * (drot * dk) + rot * dk_rate;
    };
    through_k(Mat2{t, 0.0, 0.0, 0.0}, Mat2{1.0, 0.0, 0.0, 0.0}, ScaleX);
    through_k(Mat2{0.0, eta * t, 0.0, t}, Mat2{0.0, h * t + eta, 0.0, 1.0}, ScaleY);
    through_k(Mat2{0.0, t * b, 0.0, 0.0}, Mat2{0.0, b + t * dsy, 0.0, 0.0}, Shear);

    // Rotation enters only through R(theta t); R'' = -R.
    r.d_value[Rotation] = t * (drot * k);
    r.d_rate[Rotation] = drot * k + (-t * theta) * (rot * k) + t * (drot * k_rate);
    return r;
}

} // namespace

double swept_area(const CubicBezier& c,
                  const GlobalTransform& transform,
                  std::span<const Point2, 4> offsets,
                  const Point2& anchor,
                  const QuadratureSpec& q,
                  SweepGrad* grad) {
    q.validate();
    if (grad) {
        *grad = SweepGrad{};
    }

    // Bernstein tables are shared by every t sample.
    const BernsteinTable table(q.samples_u);
    const double wt = 1.0 / q.samples_t;
    const double w = table.weight * wt;

    std::array<Point2, 4> rel;
    for (int j = 0; j < 4; ++j) {
        rel[j] = c.control[j] - anchor;
    }

    double area = 0.0;
    for (int m = 0; m < q.samples_t; ++m) {
        const double t = (m + 0.5) * wt;
        const TimeLinear lin = time_linear(transform, t);
        const Mat2 delta = lin.value - Mat2::identity();

        std::array<Point2, 4> pos;
        std::array<Point2, 4> vel;
        for (int j = 0; j < 4; ++j) {
            pos[j] = c.control[j] + (t * transform.translate + delta * rel[j] + t * offsets[j]);
            vel[j] = transform.translate + offsets[j] + lin.rate * rel[j];
        }

        std::array<Point2, 4> g_pos{};
        std::array<Point2, 4> g_vel{};
        double slice = 0.0;
        for (std::size_t k = 0; k < table.nodes.size(); ++k) {
            const auto& bw = table.basis[k];
            const auto& dw = table.derivative[k];
            Point2 fu;
            Point2 ft;
            for (int j = 0; j < 4; ++j) {
                fu.x += dw[j] * pos[j].x;
                fu.y += dw[j] * pos[j].y;
                ft.x += bw[j] * vel[j].x;
                ft.y += bw[j] * vel[j].y;
            }
            const double cr = cross(fu, ft);
            slice += std::abs(cr);
            if (grad && cr != 0.0) {
                const double s = cr > 0.0 ? 1.0 : -1.0;
                const Point2 d_fu{s * ft.y, -s * ft.x};
                const Point2 d_ft{-s * fu.y, s * fu.x};
                for (int j = 0; j < 4; ++j) {
                    g_pos[j] += dw[j] * d_fu;
                    g_vel[j] += bw[j] * d_ft;
                }
            }
        }
        area += slice * w;

        if (!grad) {
            continue;
        }
        Mat2 d_value = Mat2::zero();
        Mat2 d_rate = Mat2::zero();
        Point2 sum_pos;
        Point2 sum_vel;
        for (int j = 0; j < 4; ++j) {
            g_pos[j] *= w;
            g_vel[j] *= w;
            d_value += Mat2::outer(g_pos[j], rel[j]);
            d_rate += Mat2::outer(g_vel[j], rel[j]);
            sum_pos += g_pos[j];
            sum_vel += g_vel[j];

            const Point2 d_rel = lin.value.transposed() * g_pos[j] + lin.rate.transposed() * g_vel[j];
            grad->control[j] += d_rel;
            grad->anchor -= d_rel;
            grad->offsets[j] += t * g_pos[j] + g_vel[j];
        }
        grad->anchor += sum_pos;
        const Point2 d_translate = t * sum_pos + sum_vel;
        grad->transform[TranslateX] += d_translate.x;
        grad->transform[TranslateY] += d_translate.y;
        for (int p = 0; p < 4; ++p) {
            grad->transform[p] += frobenius(d_value, lin.d_value[p]) + frobenius(d_rate, lin.d_rate[p]);
        }
    }
    return area;
}

double swept_area_between(const CubicBezier& from,
                          const CubicBezier& to,
                          const QuadratureSpec& q,
                          std::array<Point2, 4>* grad_from,
                          std::array<Point2, 4>* grad_to) {
    std::array<Point2, 4> offsets;
    for (int j = 0; j < 4; ++j) {
        offsets[j] = to.control[j] - from.control[j];
    }
    const bool want = grad_from || grad_to;
    SweepGrad g;
    const double area = swept_area(from, GlobalTransform{}, offsets, Point2{}, q, want ? &g : nullptr);
    if (want) {
        for (int j = 0; j < 4; ++j) {
            if (grad_from) {
                (*grad_from)[j] = g.control[j] - g.offsets[j];
            }
            if (grad_to) {
                (*grad_to)[j] = g.offsets[j];
            }
        }
    }
    return area;
}

} // namespace sketchanim
