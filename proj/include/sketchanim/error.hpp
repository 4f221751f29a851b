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

#include <stdexcept>
#include <string>
#include <string_view>

namespace sketchanim {

enum class ErrorCode {
    InvalidArgument,
    ShapeMismatch,
    TooFewPoints,
    AllCollinear,
    EmptyMesh,
    MalformedSvg,
    UnsupportedCommand,
    EmptySketch,
    NonFiniteLoss,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message)
        , code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

private:
    ErrorCode code_;
};

/// Raised by the training loop when a loss evaluates to NaN or Inf.
class NonFiniteLossError : public Error {
public:
    NonFiniteLossError(int iteration, const std::string& message)
        : Error(ErrorCode::NonFiniteLoss, message)
        , iteration_(iteration) {
    }

    int iteration() const noexcept {
        return iteration_;
    }

private:
    int iteration_;
};

[[noreturn]] void throw_shape_mismatch(const std::string& what);

} // namespace sketchanim
