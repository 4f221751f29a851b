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

#include <sketchanim/frames.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/svg.hpp>

#include <algorithm>
#include <cstdio>

namespace sketchanim {

std::string frame_file_name(std::size_t index, std::string_view extension) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "frame_%04zu.", index);
    return std::string(buf) + std::string(extension);
}

std::vector<std::filesystem::path> write_frame_sequence(const std::filesystem::path& dir, const SketchVideo& video) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (std::size_t i = 0; i < video.frame_count(); ++i) {
        paths.push_back(dir / frame_file_name(i));
        write_svg_file(paths.back(), video.frames[i]);
    }
    return paths;
}

SketchVideo load_frame_sequence(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::Io, "not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("frame_") && name.ends_with(".svg")) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    SketchVideo video;
    for (const auto& f : files) {
        video.frames.push_back(parse_svg_file(f, {CanvasMode::Verbatim}));
    }
    if (video.frame_count() < 2) {
        throw Error(ErrorCode::MalformedSvg,
                    dir.string() + ": need at least 2 frame_*.svg files, found " + std::to_string(files.size()));
    }
    video.validate();
    return video;
}

} // namespace sketchanim
