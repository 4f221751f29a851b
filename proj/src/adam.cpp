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

#include <sketchanim/adam.hpp>

#include <sketchanim/error.hpp>

#include <cmath>
#include <string>

namespace sketchanim {

AdamState AdamState::zeros(std::size_t size, double lr) {
    AdamState s;
    s.m.assign(size, 0.0);
    s.v.assign(size, 0.0);
    s.lr = lr;
    return s;
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
    if (params.size() != grads.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
        throw_shape_mismatch("adam: " + std::to_string(params.size()) + " parameters, "
                             + std::to_string(grads.size()) + " gradients, " + std::to_string(state.m.size())
                             + " moments");
    }
    state.t += 1;
    const double correction1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double correction2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
        const double m_hat = state.m[i] / correction1;
        const double v_hat = state.v[i] / correction2;
        params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

} // namespace sketchanim
