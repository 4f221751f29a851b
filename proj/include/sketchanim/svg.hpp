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

#include <sketchanim/sketch.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace sketchanim {

inline constexpr double kCanvasSize = 256.0;
inline constexpr double kCanvasMargin = 0.05;

enum class CanvasMode {
    /// Verbatim when the root viewBox is exactly "0 0 256 256" (our own
    /// exports), otherwise Normalize.
    Auto,
    /// Uniform scale + center of the control-point bounding box into the
    /// canvas with a 5% margin.
    Normalize,
    /// Keep coordinates as written.
    Verbatim,
};

struct SvgParseOptions {
    CanvasMode canvas = CanvasMode::Auto;
};

/// Parses the path subset M/L/C/Z (absolute and relative). Each C segment is
/// one stroke; L segments and Z closures become degree-elevated cubics.
///
/// Throws MalformedSvg, UnsupportedCommand (naming the command or element),
/// or EmptySketch.
SketchFrame parse_svg(std::string_view text, const SvgParseOptions& options = {});

/// Reads and parses a file; missing or unreadable files throw Io.
SketchFrame parse_svg_file(const std::filesystem::path& path, const SvgParseOptions& options = {});

/// Maps the control points into the canvas (see CanvasMode::Normalize).
SketchFrame normalize_to_canvas(const SketchFrame& frame);

/// Serializes a frame as a 256x256 SVG, one path per stroke, using
/// shortest round-trip number formatting.
std::string write_svg(const SketchFrame& frame);

void write_svg_file(const std::filesystem::path& path, const SketchFrame& frame);

} // namespace sketchanim
