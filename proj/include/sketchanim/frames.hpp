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
#include <vector>

namespace sketchanim {

/// "frame_0007.svg" for index 7.
std::string frame_file_name(std::size_t index, std::string_view extension = "svg");

/// Writes frame_0000.svg ... into `dir` (created if missing) and returns the
/// written paths in temporal order.
std::vector<std::filesystem::path> write_frame_sequence(const std::filesystem::path& dir, const SketchVideo& video);

/// Reads every frame_*.svg in `dir` in lexicographic (= temporal) order.
/// Throws Io when the directory is missing and MalformedSvg/ShapeMismatch on
/// unparseable or inconsistent frames.
SketchVideo load_frame_sequence(const std::filesystem::path& dir);

} // namespace sketchanim
