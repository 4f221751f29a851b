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

#include <sketchanim/raster.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/svg.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace sketchanim {

namespace {

/// Pixel (i, j) is centered on the integer point (i, j).
void plot(RgbImage& img, double x, double y) {
    const double fx = std::round(x);
    const double fy = std::round(y);
    if (!(fx >= 0.0 && fy >= 0.0 && fx < img.width && fy < img.height)) {
        return;
    }
    const std::size_t idx = (static_cast<std::size_t>(fy) * img.width + static_cast<std::size_t>(fx)) * 3;
    img.pixels[idx] = img.pixels[idx + 1] = img.pixels[idx + 2] = 0;
}

void draw_segment(RgbImage& img, const Point2& a, const Point2& b) {
    if (!is_finite(a) || !is_finite(b)) {
        return;
    }
    const Point2 d = b - a;
    // Bound the step count so a wildly off-canvas segment stays cheap.
    const double span = std::min(std::max(std::abs(d.x), std::abs(d.y)), 4.0 * kCanvasSize);
    const int steps = std::max(1, static_cast<int>(std::ceil(span)));
    for (int s = 0; s <= steps; ++s) {
        const Point2 p = a + (static_cast<double>(s) / steps) * d;
        plot(img, p.x, p.y);
    }
}

} // namespace

bool RgbImage::is_black(int x, int y) const {
    const std::size_t idx = (static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)) * 3;
    return pixels[idx] == 0 && pixels[idx + 1] == 0 && pixels[idx + 2] == 0;
}

RgbImage rasterize(const SketchFrame& frame) {
    RgbImage img;
    img.width = static_cast<int>(kCanvasSize);
    img.height = static_cast<int>(kCanvasSize);
    img.pixels.assign(static_cast<std::size_t>(img.width) * img.height * 3, 255);
    for (const CubicBezier& c : frame.strokes) {
        Point2 prev = eval_bezier(c, 0.0);
        for (int s = 1; s < kRasterSamples; ++s) {
            const Point2 cur = eval_bezier(c, static_cast<double>(s) / (kRasterSamples - 1));
            draw_segment(img, prev, cur);
            prev = cur;
        }
    }
    return img;
}

std::string encode_ppm(const RgbImage& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

void write_ppm_file(const std::filesystem::path& path, const RgbImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    const std::string data = encode_ppm(image);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing " + path.string());
    }
}

} // namespace sketchanim
