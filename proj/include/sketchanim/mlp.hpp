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

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sketchanim {

struct MlpLayer {
    Eigen::MatrixXd weight; // out x in
    Eigen::VectorXd bias;   // out
};

/// Fully connected network with tanh between layers and a linear output
/// layer. Batches are column-major: one sample per column.
class Mlp {
public:
    /// Activations recorded by forward() for the reverse pass.
    struct Tape {
        std::vector<Eigen::MatrixXd> inputs; // input to each layer
    };

    Mlp() = default;

    /// `sizes` lists every layer width including input and output. Weights are
    /// Xavier-uniform from `rng`, biases zero; the output layer is all zeros
    /// when `zero_output` is set.
    Mlp(std::vector<int> sizes, std::mt19937_64& rng, bool zero_output);

    int input_dim() const {
        return sizes_.front();
    }
    int output_dim() const {
        return sizes_.back();
    }
    const std::vector<int>& sizes() const {
        return sizes_;
    }

    std::vector<MlpLayer>& layers() {
        return layers_;
    }
    const std::vector<MlpLayer>& layers() const {
        return layers_;
    }

    Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Tape* tape = nullptr) const;

    /// Accumulates parameter gradients into `grad` (an Mlp of the same shape)
    /// and returns the gradient w.r.t. the batch input.
    Eigen::MatrixXd backward(const Tape& tape, const Eigen::MatrixXd& upstream, Mlp& grad) const;

    /// Same shape, all parameters zero.
    Mlp zeros_like() const;

    std::size_t parameter_count() const;

    /// Appends parameters layer by layer: weight (row-major) then bias.
    void append_parameters(std::vector<double>& out) const;

    /// Reads parameters in append_parameters order starting at `offset`;
    /// returns the offset just past them.
    std::size_t assign_parameters(std::span<const double> values, std::size_t offset);

private:
    std::vector<int> sizes_;
    std::vector<MlpLayer> layers_;
};

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so that
/// streams are identical across standard library implementations.
double uniform01(std::mt19937_64& rng);

} // namespace sketchanim
