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

#include <sketchanim/losses.hpp>
#include <sketchanim/svg.hpp>
#include <sketchanim/train.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace sketchanim {

struct ExportOptions {
    bool svg = true;
    bool ppm = false;
    bool csv = true;
    bool metrics = true;
    bool checkpoint = true;

    /// Comma-separated subset of svg, ppm, csv, metrics, checkpoint.
    static ExportOptions parse(std::string_view list);
    std::string to_string() const;
};

/// Everything one animate/ablate run needs.
struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path output = "out";
    LaConfig la;
    ArapConfig arap;
    TrainConfig train;
    std::string oracle = "rigid:angle=0.1";
    CanvasMode canvas = CanvasMode::Auto;
    ExportOptions exports;

    /// Throws InvalidArgument for bad values and Io when the input file does
    /// not exist.
    void validate() const;
};

/// Overlays the keys of a JSON object onto `cfg`. Keys use the long flag
/// names with '_' for '-', e.g. "lambda_arap". Unknown keys and wrongly typed
/// values throw InvalidArgument.
void apply_config_json(RunConfig& cfg, const nlohmann::json& json);

/// Reads a JSON config file on top of the defaults. Throws InvalidArgument
/// when the file cannot be read or parsed.
RunConfig load_run_config(const std::filesystem::path& path);

nlohmann::json run_config_to_json(const RunConfig& cfg);

// Enum spellings shared by the JSON config and the command line.
LengthAnchor parse_length_anchor(std::string_view text);
FitMode parse_fit_mode(std::string_view text);
Wiring parse_wiring(std::string_view text);
Composition parse_composition(std::string_view text);
CanvasMode parse_canvas_mode(std::string_view text);
std::string_view to_string(LengthAnchor v);
std::string_view to_string(FitMode v);
std::string_view to_string(Wiring v);
std::string_view to_string(Composition v);
std::string_view to_string(CanvasMode v);

} // namespace sketchanim
