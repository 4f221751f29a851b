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

#include <sketchanim/mlp.hpp>

#include <sketchanim/error.hpp>

#include <cmath>
#include <string>

namespace sketchanim {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Mlp::Mlp(std::vector<int> sizes, std::mt19937_64& rng, bool zero_output)
    : sizes_(std::move(sizes)) {
    if (sizes_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "an MLP needs at least an input and an output size");
    }
    for (int s : sizes_) {
        if (s < 1) {
            throw Error(ErrorCode::InvalidArgument, "MLP layer sizes must be positive");
        }
    }
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        const int in = sizes_[l];
        const int out = sizes_[l + 1];
        MlpLayer layer{Eigen::MatrixXd::Zero(out, in), Eigen::VectorXd::Zero(out)};
        const bool is_output = l + 2 == sizes_.size();
        if (!(is_output && zero_output)) {
            const double limit = std::sqrt(6.0 / (in + out));
            for (int r = 0; r < out; ++r) {
                for (int c = 0; c < in; ++c) {
                    layer.weight(r, c) = limit * (2.0 * uniform01(rng) - 1.0);
                }
            }
        }
        layers_.push_back(std::move(layer));
    }
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Tape* tape) const {
    if (x.rows() != input_dim()) {
        throw_shape_mismatch("MLP expects " + std::to_string(input_dim()) + " inputs, got "
                             + std::to_string(x.rows()));
    }
    if (tape) {
        tape->inputs.clear();
    }
    Eigen::MatrixXd h = x;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        if (tape) {
            tape->inputs.push_back(h);
        }
        Eigen::MatrixXd z = layers_[l].weight * h;
        z.colwise() += layers_[l].bias;
        if (l + 1 < layers_.size()) {
            h = z.unaryExpr([](double v) { return std::tanh(v); });
        } else {
            h = std::move(z);
        }
    }
    return h;
}

Eigen::MatrixXd Mlp::backward(const Tape& tape, const Eigen::MatrixXd& upstream, Mlp& grad) const {
    if (tape.inputs.size() != layers_.size() || grad.layers_.size() != layers_.size()) {
        throw_shape_mismatch("MLP tape or gradient does not match the network");
    }
    if (upstream.rows() != output_dim() || upstream.cols() != tape.inputs.front().cols()) {
        throw_shape_mismatch("MLP upstream gradient has the wrong shape");
    }
    Eigen::MatrixXd delta = upstream; // gradient w.r.t. the pre-activation of layer l
    for (std::size_t l = layers_.size(); l-- > 0;) {
        const Eigen::MatrixXd& input = tape.inputs[l];
        grad.layers_[l].weight.noalias() += delta * input.transpose();
        grad.layers_[l].bias += delta.rowwise().sum();
        Eigen::MatrixXd d_input = layers_[l].weight.transpose() * delta;
        if (l > 0) {
            // input = tanh(previous pre-activation)
            delta = (d_input.array() * (1.0 - input.array().square())).matrix();
        } else {
            return d_input;
        }
    }
    return {};
}

Mlp Mlp::zeros_like() const {
    Mlp out;
    out.sizes_ = sizes_;
    for (const MlpLayer& l : layers_) {
        out.layers_.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()),
                               Eigen::VectorXd::Zero(l.bias.size())});
    }
    return out;
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const MlpLayer& l : layers_) {
        n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    }
    return n;
}

void Mlp::append_parameters(std::vector<double>& out) const {
    for (const MlpLayer& l : layers_) {
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c) {
                out.push_back(l.weight(r, c));
            }
        }
        for (Eigen::Index r = 0; r < l.bias.size(); ++r) {
            out.push_back(l.bias(r));
        }
    }
}

std::size_t Mlp::assign_parameters(std::span<const double> values, std::size_t offset) {
    if (offset + parameter_count() > values.size()) {
        throw_shape_mismatch("parameter vector is too short for the MLP");
    }
    for (MlpLayer& l : layers_) {
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c) {
                l.weight(r, c) = values[offset++];
            }
        }
        for (Eigen::Index r = 0; r < l.bias.size(); ++r) {
            l.bias(r) = values[offset++];
        }
    }
    return offset;
}

} // namespace sketchanim
