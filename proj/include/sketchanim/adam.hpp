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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sketchanim {

/// Bias-corrected Adam moments and hyperparameters for one parameter group.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::int64_t t = 0;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState zeros(std::size_t size, double lr = 1e-3);
};

/// One Adam update of `params` in place. Throws ShapeMismatch when params,
/// grads and the state moments differ in length.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

} // namespace sketchanim
