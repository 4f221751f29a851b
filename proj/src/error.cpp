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

#include <sketchanim/error.hpp>

namespace sketchanim {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "InvalidArgument";
    case ErrorCode::ShapeMismatch:
        return "ShapeMismatch";
    case ErrorCode::TooFewPoints:
        return "TooFewPoints";
    case ErrorCode::AllCollinear:
        return "AllCollinear";
    case ErrorCode::EmptyMesh:
        return "EmptyMesh";
    case ErrorCode::MalformedSvg:
        return "MalformedSvg";
    case ErrorCode::UnsupportedCommand:
        return "UnsupportedCommand";
    case ErrorCode::EmptySketch:
        return "EmptySketch";
    case ErrorCode::NonFiniteLoss:
        return "NonFiniteLoss";
    case ErrorCode::Io:
        return "Io";
    }
    return "Unknown";
}

void throw_shape_mismatch(const std::string& what) {
    throw Error(ErrorCode::ShapeMismatch, "shape mismatch: " + what);
}

} // namespace sketchanim
