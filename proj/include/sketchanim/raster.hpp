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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sketchanim {

/// 8-bit RGB image, row-major from the top-left corner.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // width * height * 3

    bool is_black(int x, int y) const;
};

inline constexpr int kRasterSamples = 128;

/// Draws every stroke as a black polyline through kRasterSamples evenly
/// spaced curve samples (both endpoints included) on a white 256x256 image.
RgbImage rasterize(const SketchFrame& frame);

/// Binary PPM (P6) encoding.
std::string encode_ppm(const RgbImage& image);
void write_ppm_file(const std::filesystem::path& path, const RgbImage& image);

} // namespace sketchanim
