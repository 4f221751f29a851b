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

#include <sketchanim/config.hpp>

#include <sketchanim/error.hpp>
#include <sketchanim/oracle.hpp>

#include <fstream>
#include <sstream>

namespace sketchanim {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::pair<std::string_view, Enum> (&table)[N], std::string_view what) {
    for (const auto& [name, value] : table) {
        if (name == text) {
            return value;
        }
    }
    std::string msg = "unknown " + std::string(what) + " '" + std::string(text) + "' (expected";
    for (std::size_t i = 0; i < N; ++i) {
        msg += (i == 0 ? " " : ", ") + std::string(table[i].first);
    }
    throw Error(ErrorCode::InvalidArgument, msg + ")");
}

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum v, const std::pair<std::string_view, Enum> (&table)[N]) {
    for (const auto& [name, value] : table) {
        if (value == v) {
            return name;
        }
    }
    return "?";
}

constexpr std::pair<std::string_view, LengthAnchor> kAnchors[] = {
    {"initial", LengthAnchor::InitialFrame},
    {"previous", LengthAnchor::PreviousFrame},
};
constexpr std::pair<std::string_view, FitMode> kFitModes[] = {
    {"rotation", FitMode::RotationOnly},
    {"rotation_scale", FitMode::RotationThenScale},
};
constexpr std::pair<std::string_view, Wiring> kWirings[] = {
    {"joint", Wiring::Joint},
    {"posthoc", Wiring::PostHocRefine},
};
constexpr std::pair<std::string_view, Composition> kCompositions[] = {
    {"recurrent", Composition::Recurrent},
    {"anchored", Composition::Anchored},
};
constexpr std::pair<std::string_view, CanvasMode> kCanvasModes[] = {
    {"auto", CanvasMode::Auto},
    {"normalize", CanvasMode::Normalize},
    {"verbatim", CanvasMode::Verbatim},
};

template <typename T>
T get_as(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' has the wrong type");
    }
}

} // namespace

LengthAnchor parse_length_anchor(std::string_view text) {
    return parse_enum(text, kAnchors, "length anchor");
}
FitMode parse_fit_mode(std::string_view text) {
    return parse_enum(text, kFitModes, "fit mode");
}
Wiring parse_wiring(std::string_view text) {
    return parse_enum(text, kWirings, "wiring");
}
Composition parse_composition(std::string_view text) {
    return parse_enum(text, kCompositions, "composition");
}
CanvasMode parse_canvas_mode(std::string_view text) {
    return parse_enum(text, kCanvasModes, "canvas mode");
}
std::string_view to_string(LengthAnchor v) {
    return enum_name(v, kAnchors);
}
std::string_view to_string(FitMode v) {
    return enum_name(v, kFitModes);
}
std::string_view to_string(Wiring v) {
    return enum_name(v, kWirings);
}
std::string_view to_string(Composition v) {
    return enum_name(v, kCompositions);
}
std::string_view to_string(CanvasMode v) {
    return enum_name(v, kCanvasModes);
}

ExportOptions ExportOptions::parse(std::string_view list) {
    ExportOptions e{false, false, false, false, false};
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const std::string_view item = list.substr(start, comma - start);
        if (item == "svg") {
            e.svg = true;
        } else if (item == "ppm") {
            e.ppm = true;
        } else if (item == "csv") {
            e.csv = true;
        } else if (item == "metrics") {
            e.metrics = true;
        } else if (item == "checkpoint") {
            e.checkpoint = true;
        } else if (!item.empty()) {
            throw Error(ErrorCode::InvalidArgument, "unknown export format '" + std::string(item) + "'");
        }
        start = comma + 1;
    }
    return e;
}

std::string ExportOptions::to_string() const {
    std::string out;
    const auto add = [&out](bool on, const char* name) {
        if (on) {
            out += out.empty() ? "" : ",";
            out += name;
        }
    };
    add(svg, "svg");
    add(ppm, "ppm");
    add(csv, "csv");
    add(metrics, "metrics");
    add(checkpoint, "checkpoint");
    return out;
}

void RunConfig::validate() const {
    if (output.empty()) {
        throw Error(ErrorCode::InvalidArgument, "output directory must not be empty");
    }
    la.validate();
    arap.validate();
    train.validate();
    const OracleSpec spec = OracleSpec::parse(oracle);
    if (!OracleRegistry::builtin().contains(spec.name)) {
        throw Error(ErrorCode::InvalidArgument, "unknown oracle '" + spec.name + "'");
    }
    if (input.empty()) {
        throw Error(ErrorCode::InvalidArgument, "an input sketch is required");
    }
    std::error_code ec;
    if (!std::filesystem::is_regular_file(input, ec)) {
        throw Error(ErrorCode::Io, "input file not found: " + input.string());
    }
}

void apply_config_json(RunConfig& cfg, const nlohmann::json& json) {
    if (!json.is_object()) {
        throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    }
    for (const auto& [key, value] : json.items()) {
        if (key == "input") {
            cfg.input = get_as<std::string>(value, key);
        } else if (key == "out") {
            cfg.output = get_as<std::string>(value, key);
        } else if (key == "frames") {
            const auto n = get_as<long long>(value, key);
            if (n < 0) {
                throw Error(ErrorCode::InvalidArgument, "frames must be at least 2");
            }
            cfg.train.frames = static_cast<std::size_t>(n);
        } else if (key == "iters") {
            cfg.train.iterations = get_as<int>(value, key);
        } else if (key == "lambda_l") {
            cfg.la.lambda_l = get_as<double>(value, key);
        } else if (key == "lambda_a") {
            cfg.la.lambda_a = get_as<double>(value, key);
        } else if (key == "lambda_arap") {
            cfg.arap.lambda_arap = get_as<double>(value, key);
        } else if (key == "length_anchor") {
            cfg.la.length_anchor = parse_length_anchor(get_as<std::string>(value, key));
        } else if (key == "fit_mode") {
            cfg.arap.fit_mode = parse_fit_mode(get_as<std::string>(value, key));
        } else if (key == "wiring") {
            cfg.train.wiring = parse_wiring(get_as<std::string>(value, key));
        } else if (key == "composition") {
            cfg.train.composition = parse_composition(get_as<std::string>(value, key));
        } else if (key == "seed") {
            cfg.train.seed = get_as<std::uint64_t>(value, key);
        } else if (key == "log_every") {
            cfg.train.log_every = get_as<int>(value, key);
        } else if (key == "lr") {
            cfg.train.learning_rate = get_as<double>(value, key);
        } else if (key == "cosine_decay") {
            cfg.train.cosine_decay = get_as<bool>(value, key);
        } else if (key == "frequencies") {
            cfg.train.motion.encoding.num_frequencies = get_as<int>(value, key);
        } else if (key == "include_input") {
            cfg.train.motion.encoding.include_input = get_as<bool>(value, key);
        } else if (key == "hidden_width") {
            cfg.train.motion.hidden_width = get_as<int>(value, key);
        } else if (key == "hidden_layers") {
            cfg.train.motion.hidden_layers = get_as<int>(value, key);
        } else if (key == "feature_dim") {
            cfg.train.motion.feature_dim = get_as<int>(value, key);
        } else if (key == "samples_u") {
            cfg.train.quadrature.samples_u = get_as<int>(value, key);
        } else if (key == "samples_t") {
            cfg.train.quadrature.samples_t = get_as<int>(value, key);
        } else if (key == "oracle") {
            cfg.oracle = get_as<std::string>(value, key);
        } else if (key == "canvas") {
            cfg.canvas = parse_canvas_mode(get_as<std::string>(value, key));
        } else if (key == "export") {
            cfg.exports = ExportOptions::parse(get_as<std::string>(value, key));
        } else {
            throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
        }
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot read config file " + path.string());
    }
    nlohmann::json json;
    try {
        in >> json;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, "config file " + path.string() + ": " + e.what());
    }
    RunConfig cfg;
    apply_config_json(cfg, json);
    return cfg;
}

nlohmann::json run_config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["input"] = cfg.input.string();
    j["out"] = cfg.output.string();
    j["frames"] = cfg.train.frames;
    j["iters"] = cfg.train.iterations;
    j["lambda_l"] = cfg.la.lambda_l;
    j["lambda_a"] = cfg.la.lambda_a;
    j["lambda_arap"] = cfg.arap.lambda_arap;
    j["length_anchor"] = to_string(cfg.la.length_anchor);
    j["fit_mode"] = to_string(cfg.arap.fit_mode);
    j["wiring"] = to_string(cfg.train.wiring);
    j["composition"] = to_string(cfg.train.composition);
    j["seed"] = cfg.train.seed;
    j["log_every"] = cfg.train.log_every;
    j["lr"] = cfg.train.learning_rate;
    j["cosine_decay"] = cfg.train.cosine_decay;
    j["frequencies"] = cfg.train.motion.encoding.num_frequencies;
    j["include_input"] = cfg.train.motion.encoding.include_input;
    j["hidden_width"] = cfg.train.motion.hidden_width;
    j["hidden_layers"] = cfg.train.motion.hidden_layers;
    j["feature_dim"] = cfg.train.motion.feature_dim;
    j["samples_u"] = cfg.train.quadrature.samples_u;
    j["samples_t"] = cfg.train.quadrature.samples_t;
    j["oracle"] = cfg.oracle;
    j["canvas"] = to_string(cfg.canvas);
    j["export"] = cfg.exports.to_string();
    return j;
}

} // namespace sketchanim
