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

#include <sketchanim/motion.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/svg.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

namespace sketchanim {

void EncodingSpec::validate() const {
    if (num_frequencies < 1) {
        throw Error(ErrorCode::InvalidArgument, "num_frequencies must be >= 1");
    }
}

void MotionConfig::validate() const {
    encoding.validate();
    if (hidden_width < 1 || hidden_layers < 0 || feature_dim < 1) {
        throw Error(ErrorCode::InvalidArgument, "motion network sizes must be positive");
    }
}

namespace {

constexpr double kHalfCanvas = 0.5 * kCanvasSize;

void encode_into(double v, const EncodingSpec& spec, double* out) {
    int k = 0;
    if (spec.include_input) {
        out[k++] = v;
    }
    double freq = std::numbers::pi;
    for (int f = 0; f < spec.num_frequencies; ++f) {
        out[k++] = std::sin(freq * v);
        out[k++] = std::cos(freq * v);
        freq *= 2.0;
    }
}

// d(feature)/dv for encode_into.
void encode_derivative_into(double v, const EncodingSpec& spec, double* out) {
    int k = 0;
    if (spec.include_input) {
        out[k++] = 1.0;
    }
    double freq = std::numbers::pi;
    for (int f = 0; f < spec.num_frequencies; ++f) {
        out[k++] = freq * std::cos(freq * v);
        out[k++] = -freq * std::sin(freq * v);
        freq *= 2.0;
    }
}

Point2 to_unit(const Point2& p) {
    return {p.x / kHalfCanvas - 1.0, p.y / kHalfCanvas - 1.0};
}

Eigen::MatrixXd encode_points(const SketchFrame& frame, const EncodingSpec& spec) {
    const int dim = spec.scalar_dim();
    Eigen::MatrixXd x(spec.point_dim(), static_cast<Eigen::Index>(frame.point_count()));
    for (std::size_t j = 0; j < frame.point_count(); ++j) {
        const Point2 u = to_unit(frame.point(j));
        double* col = x.col(static_cast<Eigen::Index>(j)).data();
        encode_into(u.x, spec, col);
        encode_into(u.y, spec, col + dim);
    }
    return x;
}

Eigen::MatrixXd encode_intervals(std::size_t frames, const EncodingSpec& spec) {
    const auto intervals = static_cast<Eigen::Index>(frames - 1);
    Eigen::MatrixXd x(spec.scalar_dim(), intervals);
    for (Eigen::Index i = 0; i < intervals; ++i) {
        const double tau = static_cast<double>(i + 1) / static_cast<double>(frames - 1);
        encode_into(tau, spec, x.col(i).data());
    }
    return x;
}

std::vector<int> layer_sizes(int in, const MotionConfig& cfg, int out) {
    std::vector<int> sizes{in};
    for (int l = 0; l < cfg.hidden_layers; ++l) {
        sizes.push_back(cfg.hidden_width);
    }
    sizes.push_back(out);
    return sizes;
}

void check_binding(const MotionParams& params, const SketchFrame& frame, std::size_t frames) {
    if (params.point_count != frame.point_count()) {
        throw_shape_mismatch("motion parameters are bound to " + std::to_string(params.point_count)
                             + " control points, sketch has " + std::to_string(frame.point_count()));
    }
    if (frames < 2 || params.frame_count != frames) {
        throw_shape_mismatch("motion parameters are bound to " + std::to_string(params.frame_count)
                             + " frames, requested " + std::to_string(frames));
    }
}

} // namespace

std::vector<double> positional_encode(const Point2& p, const EncodingSpec& spec) {
    std::vector<double> out(static_cast<std::size_t>(spec.point_dim()));
    const Point2 u = to_unit(p);
    encode_into(u.x, spec, out.data());
    encode_into(u.y, spec, out.data() + spec.scalar_dim());
    return out;
}

std::vector<double> scalar_encode(double v, const EncodingSpec& spec) {
    std::vector<double> out(static_cast<std::size_t>(spec.scalar_dim()));
    encode_into(v, spec, out.data());
    return out;
}

MotionParams MotionParams::create(const MotionConfig& config, std::size_t points, std::size_t frames, std::uint64_t seed) {
    config.validate();
    if (points == 0 || points % 4 != 0 || frames < 2) {
        throw_shape_mismatch("motion model needs 4k > 0 points and at least 2 frames");
    }
    MotionParams p;
    p.config = config;
    p.point_count = points;
    p.frame_count = frames;
    std::mt19937_64 rng(seed);
    const int enc = config.encoding.point_dim();
    const int cond = config.feature_dim + config.encoding.scalar_dim();
    p.shared = Mlp(layer_sizes(enc, config, config.feature_dim), rng, false);
    p.local = Mlp(layer_sizes(cond, config, 2), rng, config.zero_init_final);
    p.global = Mlp(layer_sizes(cond, config, 6), rng, config.zero_init_final);
    p.refine = Mlp(layer_sizes(enc, config, 2), rng, config.zero_init_final);
    return p;
}

MotionParams MotionParams::zeros_like() const {
    MotionParams z;
    z.config = config;
    z.point_count = point_count;
    z.frame_count = frame_count;
    z.shared = shared.zeros_like();
    z.local = local.zeros_like();
    z.global = global.zeros_like();
    z.refine = refine.zeros_like();
    return z;
}

std::size_t MotionParams::parameter_count() const {
    return shared.parameter_count() + local.parameter_count() + global.parameter_count() + refine.parameter_count();
}

std::vector<double> MotionParams::flatten() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    shared.append_parameters(out);
    local.append_parameters(out);
    global.append_parameters(out);
    refine.append_parameters(out);
    return out;
}

void MotionParams::assign(std::span<const double> values) {
    if (values.size() != parameter_count()) {
        throw_shape_mismatch("expected " + std::to_string(parameter_count()) + " parameters, got "
                             + std::to_string(values.size()));
    }
    std::size_t offset = shared.assign_parameters(values, 0);
    offset = local.assign_parameters(values, offset);
    offset = global.assign_parameters(values, offset);
    refine.assign_parameters(values, offset);
}

std::pair<std::size_t, std::size_t> MotionParams::motion_range() const {
    return {0, shared.parameter_count() + local.parameter_count() + global.parameter_count()};
}

std::pair<std::size_t, std::size_t> MotionParams::refine_range() const {
    const std::size_t begin = motion_range().second;
    return {begin, begin + refine.parameter_count()};
}

MotionOutput forward(const MotionParams& params, const SketchFrame& initial, std::size_t frames, MotionTape* tape) {
    check_binding(params, initial, frames);
    const EncodingSpec& spec = params.config.encoding;
    const auto count = static_cast<Eigen::Index>(initial.point_count());
    const auto intervals = static_cast<Eigen::Index>(frames - 1);
    const Eigen::Index feature = params.config.feature_dim;
    const Eigen::Index cond = spec.scalar_dim();

    MotionTape local_tape;
    MotionTape& t = tape ? *tape : local_tape;

    const Eigen::MatrixXd features = params.shared.forward(encode_points(initial, spec), &t.shared);
    const Eigen::MatrixXd frame_code = encode_intervals(frames, spec);

    Eigen::MatrixXd local_in(feature + cond, count * intervals);
    for (Eigen::Index i = 0; i < intervals; ++i) {
        for (Eigen::Index j = 0; j < count; ++j) {
            local_in.col(i * count + j) << features.col(j), frame_code.col(i);
        }
    }
    const Eigen::MatrixXd local_out = params.local.forward(local_in, &t.local);

    const Eigen::VectorXd pooled = features.rowwise().sum() / static_cast<double>(count);
    Eigen::MatrixXd global_in(feature + cond, intervals);
    for (Eigen::Index i = 0; i < intervals; ++i) {
        global_in.col(i) << pooled, frame_code.col(i);
    }
    const Eigen::MatrixXd global_out = params.global.forward(global_in, &t.global);

    MotionOutput out;
    out.offsets.assign(frames - 1, std::vector<Point2>(initial.point_count()));
    for (Eigen::Index i = 0; i < intervals; ++i) {
        for (Eigen::Index j = 0; j < count; ++j) {
            out.offsets[i][j] = {local_out(0, i * count + j), local_out(1, i * count + j)};
        }
        GlobalTransform m;
        m.scale_x = std::exp(global_out(0, i));
        m.scale_y = std::exp(global_out(1, i));
        m.shear = global_out(2, i);
        m.rotation = global_out(3, i);
        m.translate = {global_out(4, i), global_out(5, i)};
        out.transforms.push_back(m);
    }
    t.transforms = out.transforms;
    return out;
}

MotionParams backward(const MotionParams& params,
                      const MotionTape& tape,
                      std::span<const TransformGrad> transform_grad,
                      const LocalOffsets& offset_grad) {
    const std::size_t intervals = tape.transforms.size();
    const auto count = static_cast<Eigen::Index>(params.point_count);
    if (transform_grad.size() != intervals || offset_grad.size() != intervals) {
        throw_shape_mismatch("upstream gradients must cover every frame interval");
    }
    for (const auto& row : offset_grad) {
        if (static_cast<Eigen::Index>(row.size()) != count) {
            throw_shape_mismatch("upstream offset gradient has the wrong point count");
        }
    }

    MotionParams grad = params.zeros_like();
    const auto n_int = static_cast<Eigen::Index>(intervals);
    Eigen::MatrixXd d_local(2, count * n_int);
    Eigen::MatrixXd d_global(6, n_int);
    for (Eigen::Index i = 0; i < n_int; ++i) {
        for (Eigen::Index j = 0; j < count; ++j) {
            d_local(0, i * count + j) = offset_grad[i][j].x;
            d_local(1, i * count + j) = offset_grad[i][j].y;
        }
        const TransformGrad& g = transform_grad[i];
        const GlobalTransform& m = tape.transforms[i];
        d_global(0, i) = g[ScaleX] * m.scale_x; // scale = exp(output)
        d_global(1, i) = g[ScaleY] * m.scale_y;
        d_global(2, i) = g[Shear];
        d_global(3, i) = g[Rotation];
        d_global(4, i) = g[TranslateX];
        d_global(5, i) = g[TranslateY];
    }

    const Eigen::MatrixXd d_local_in = params.local.backward(tape.local, d_local, grad.local);
    const Eigen::MatrixXd d_global_in = params.global.backward(tape.global, d_global, grad.global);

    const Eigen::Index feature = params.config.feature_dim;
    Eigen::MatrixXd d_features = Eigen::MatrixXd::Zero(feature, count);
    for (Eigen::Index i = 0; i < n_int; ++i) {
        d_features += d_local_in.block(0, i * count, feature, count);
    }
    const Eigen::VectorXd d_pooled = d_global_in.topRows(feature).rowwise().sum() / static_cast<double>(count);
    d_features.colwise() += d_pooled;
    params.shared.backward(tape.shared, d_features, grad.shared);
    return grad;
}

MotionParams backward(const MotionParams& params,
                      const SketchFrame& initial,
                      std::size_t frames,
                      std::span<const TransformGrad> transform_grad,
                      const LocalOffsets& offset_grad) {
    MotionTape tape;
    forward(params, initial, frames, &tape);
    return backward(params, tape, transform_grad, offset_grad);
}

SketchFrame refine(const MotionParams& params, const SketchFrame& frame) {
    if (params.point_count != frame.point_count()) {
        throw_shape_mismatch("refinement head is bound to " + std::to_string(params.point_count) + " points");
    }
    const Eigen::MatrixXd out = params.refine.forward(encode_points(frame, params.config.encoding));
    SketchFrame result = frame;
    for (std::size_t j = 0; j < frame.point_count(); ++j) {
        const auto c = static_cast<Eigen::Index>(j);
        result.point(j) = frame.point(j) + Point2{out(0, c), out(1, c)};
    }
    return result;
}

void refine_backward(const MotionParams& params,
                     const SketchFrame& frame,
                     std::span<const Point2> upstream,
                     MotionParams& param_grad,
                     std::vector<Point2>* point_grad) {
    if (params.point_count != frame.point_count() || upstream.size() != frame.point_count()) {
        throw_shape_mismatch("refinement gradient does not match the frame");
    }
    const EncodingSpec& spec = params.config.encoding;
    Mlp::Tape tape;
    params.refine.forward(encode_points(frame, spec), &tape);
    const auto count = static_cast<Eigen::Index>(frame.point_count());
    Eigen::MatrixXd d_out(2, count);
    for (Eigen::Index j = 0; j < count; ++j) {
        d_out(0, j) = upstream[j].x;
        d_out(1, j) = upstream[j].y;
    }
    const Eigen::MatrixXd d_code = params.refine.backward(tape, d_out, param_grad.refine);
    if (!point_grad) {
        return;
    }
    point_grad->assign(frame.point_count(), {});
    const int dim = spec.scalar_dim();
    std::vector<double> slope(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < count; ++j) {
        const Point2 u = to_unit(frame.point(j));
        Point2 g = upstream[j];
        encode_derivative_into(u.x, spec, slope.data());
        for (int k = 0; k < dim; ++k) {
            g.x += d_code(k, j) * slope[k] / kHalfCanvas;
        }
        encode_derivative_into(u.y, spec, slope.data());
        for (int k = 0; k < dim; ++k) {
            g.y += d_code(dim + k, j) * slope[k] / kHalfCanvas;
        }
        (*point_grad)[j] = g;
    }
}

namespace {

constexpr char kMagic[4] = {'S', 'M', 'V', '1'};

} // namespace

void save_checkpoint(const std::filesystem::path& path, const MotionParams& params) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write checkpoint " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    for (double v : params.flatten()) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        char bytes[8];
        for (int b = 0; b < 8; ++b) {
            bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
        }
        out.write(bytes, sizeof(bytes));
    }
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing checkpoint " + path.string());
    }
}

void load_checkpoint(const std::filesystem::path& path, MotionParams& params) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open checkpoint " + path.string());
    }
    const std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() < sizeof(kMagic) || !std::equal(kMagic, kMagic + 4, data.begin())) {
        throw Error(ErrorCode::Io, path.string() + " is not an SMV1 checkpoint");
    }
    const std::size_t payload = data.size() - sizeof(kMagic);
    if (payload % 8 != 0 || payload / 8 != params.parameter_count()) {
        throw_shape_mismatch("checkpoint holds " + std::to_string(payload / 8) + " values, model has "
                             + std::to_string(params.parameter_count()));
    }
    std::vector<double> values(payload / 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[4 + 8 * i + b])) << (8 * b);
        }
        values[i] = std::bit_cast<double>(bits);
    }
    params.assign(values);
}

} // namespace sketchanim
