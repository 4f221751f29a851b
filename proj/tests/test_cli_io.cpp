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

#include "support.hpp"

#include <sketchanim/app.hpp>
#include <sketchanim/config.hpp>
#include <sketchanim/error.hpp>
#include <sketchanim/frames.hpp>
#include <sketchanim/metrics.hpp>
#include <sketchanim/raster.hpp>
#include <sketchanim/svg.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sketchanim;
using namespace testsupport;

namespace {

const char* kSketch = R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 100 100">
<path d="M 10 80 C 30 20 70 20 90 80"/>
<path d="M 20 90 L 80 90"/>
</svg>
)";

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("sketchanim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

RunConfig small_run(const std::filesystem::path& dir) {
    write_file(dir / "sketch.svg", kSketch);
    RunConfig cfg;
    cfg.input = dir / "sketch.svg";
    cfg.output = dir / "out";
    cfg.train.frames = 6;
    cfg.train.iterations = 30;
    cfg.train.seed = 7;
    cfg.train.motion.hidden_width = 16;
    cfg.train.motion.feature_dim = 16;
    cfg.train.quadrature = QuadratureSpec{32, 4};
    return cfg;
}

CubicBezier segment(Point2 a, Point2 b) {
    return CubicBezier{{a, lerp(a, b, 1.0 / 3.0), lerp(a, b, 2.0 / 3.0), b}};
}

SketchFrame triangle_sketch(double stretch) {
    SketchFrame f;
    f.strokes.push_back(segment({10, 10}, {10 + stretch, 10}));
    f.strokes.push_back(segment({10, 20}, {15, 30}));
    return f;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("config file values and defaults") {
    RunConfig cfg;
    CHECK(cfg.oracle == "rigid:angle=0.1");
    CHECK(cfg.train.iterations == 1000);
    apply_config_json(cfg, nlohmann::json::parse(R"({"frames": 12, "lambda_l": 0.5, "fit_mode": "rotation",
        "wiring": "posthoc", "oracle": "static", "export": "svg,ppm", "samples_u": 40, "length_anchor": "previous"})"));
    CHECK(cfg.train.frames == 12);
    CHECK(cfg.la.lambda_l == 0.5);
    CHECK(cfg.la.lambda_a == 1e-5);
    CHECK(cfg.arap.fit_mode == FitMode::RotationOnly);
    CHECK(cfg.train.wiring == Wiring::PostHocRefine);
    CHECK(cfg.la.length_anchor == LengthAnchor::PreviousFrame);
    CHECK(cfg.oracle == "static");
    CHECK(cfg.exports.ppm);
    CHECK_FALSE(cfg.exports.csv);
    CHECK(cfg.train.quadrature.samples_u == 40);

    CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"bogus": 1})")), Error);
    CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"frames": "many"})")), Error);
    CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"wiring": "sideways"})")), Error);
    CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse("[1, 2]")), Error);
}

TEST_CASE("config json round trip") {
    RunConfig cfg;
    cfg.input = "a.svg";
    cfg.train.seed = 99;
    cfg.arap.lambda_arap = 0.25;
    cfg.train.composition = Composition::Anchored;
    cfg.canvas = CanvasMode::Verbatim;
    RunConfig back;
    apply_config_json(back, run_config_to_json(cfg));
    CHECK(run_config_to_json(back) == run_config_to_json(cfg));
    CHECK(back.train.seed == 99);
    CHECK(back.canvas == CanvasMode::Verbatim);
}

TEST_CASE("loading config files") {
    const auto dir = scratch_dir("config");
    write_file(dir / "run.json", R"({"iters": 5, "seed": 3})");
    const RunConfig cfg = load_run_config(dir / "run.json");
    CHECK(cfg.train.iterations == 5);
    CHECK(cfg.train.seed == 3);
    write_file(dir / "broken.json", "{ not json");
    CHECK_THROWS_AS(load_run_config(dir / "broken.json"), Error);
    try {
        load_run_config(dir / "absent.json");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(exit_code_for(e) == kExitConfig);
    }
}

TEST_CASE("enum spellings") {
    for (auto v : {LengthAnchor::InitialFrame, LengthAnchor::PreviousFrame}) {
        CHECK(parse_length_anchor(to_string(v)) == v);
    }
    for (auto v : {FitMode::RotationOnly, FitMode::RotationThenScale}) {
        CHECK(parse_fit_mode(to_string(v)) == v);
    }
    for (auto v : {Wiring::Joint, Wiring::PostHocRefine}) {
        CHECK(parse_wiring(to_string(v)) == v);
    }
    for (auto v : {Composition::Recurrent, Composition::Anchored}) {
        CHECK(parse_composition(to_string(v)) == v);
    }
    for (auto v : {CanvasMode::Auto, CanvasMode::Normalize, CanvasMode::Verbatim}) {
        CHECK(parse_canvas_mode(to_string(v)) == v);
    }
    CHECK_THROWS_AS(parse_fit_mode("affine"), Error);
}

TEST_CASE("export lists") {
    const ExportOptions all = ExportOptions::parse("svg,ppm,csv,metrics,checkpoint");
    CHECK(all.ppm);
    CHECK(ExportOptions::parse(all.to_string()).to_string() == all.to_string());
    const ExportOptions none = ExportOptions::parse("");
    CHECK_FALSE(none.svg);
    CHECK_THROWS_AS(ExportOptions::parse("gif"), Error);
}

TEST_CASE("validation exit codes") {
    const auto dir = scratch_dir("validate");
    RunConfig cfg = small_run(dir);
    CHECK_NOTHROW(cfg.validate());

    std::ostringstream err;
    cfg.train.iterations = 0;
    CHECK(run_animate(cfg, err) == kExitConfig);
    CHECK(err.str().find('\n') == err.str().size() - 1);
    CHECK_FALSE(std::filesystem::exists(cfg.output));

    cfg = small_run(dir);
    cfg.la.lambda_l = -1;
    CHECK(run_animate(cfg, err) == kExitConfig);
    cfg = small_run(dir);
    cfg.oracle = "unknown";
    CHECK(run_animate(cfg, err) == kExitConfig);

    cfg = small_run(dir);
    cfg.input = dir / "missing.svg";
    std::ostringstream missing;
    CHECK(run_animate(cfg, missing) == kExitInput);
    CHECK(missing.str().find((dir / "missing.svg").string()) != std::string::npos);

    cfg = small_run(dir);
    write_file(dir / "bad.svg", "<svg><path d=\"M 0 0 Q 1 1 2 2\"/></svg>");
    cfg.input = dir / "bad.svg";
    CHECK(run_animate(cfg, err) == kExitInput);

    CHECK(exit_code_for(Error(ErrorCode::ShapeMismatch, "x")) == kExitConfig);
    CHECK(exit_code_for(Error(ErrorCode::EmptyMesh, "x")) == kExitInput);
    CHECK(exit_code_for(NonFiniteLossError(4, "x")) == kExitNonFinite);
}

TEST_CASE("metrics of hand-built sequences") {
    SUBCASE("static") {
        const SketchFrame f = triangle_sketch(3);
        const SketchVideo v{std::vector<SketchFrame>(24, f)};
        const MetricsReport m = compute_metrics(v);
        CHECK(m.frame_count == 24);
        CHECK(m.max_length_deviation == 0.0);
        CHECK(m.mean_length_deviation == 0.0);
        CHECK(m.total_swept_area == 0.0);
        CHECK(m.total_arap_energy == 0.0);
        CHECK(m.arap_energy.size() == 24);
        CHECK(m.mean_speed == 0.0);
        CHECK(m.mean_acceleration == 0.0);
    }
    SUBCASE("translation") {
        SketchVideo v;
        for (int i = 0; i < 5; ++i) {
            SketchFrame f = triangle_sketch(3);
            for (std::size_t j = 0; j < f.point_count(); ++j) {
                f.point(j) += Point2{2.0 * i, 1.0 * i};
            }
            v.frames.push_back(f);
        }
        const MetricsReport m = compute_metrics(v);
        CHECK(m.max_length_deviation <= 1e-12);
        CHECK(m.total_swept_area > 0.0);
        CHECK(m.total_arap_energy <= 1e-9);
        CHECK(m.mean_speed == doctest::Approx(std::sqrt(5.0)));
        CHECK(m.mean_acceleration <= 1e-12);
    }
    SUBCASE("stretch from 3 to 4") {
        const SketchVideo v{{triangle_sketch(3), triangle_sketch(4)}};
        const MetricsReport m = compute_metrics(v);
        CHECK(m.max_length_deviation == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.mean_length_deviation == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(m.stroke_lengths[0][0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(m.stroke_lengths[1][0] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(m.mean_acceleration == 0.0);
    }
    SUBCASE("collinear control points report zero ARAP") {
        SketchFrame f;
        f.strokes.push_back(segment({0, 0}, {3, 0}));
        SketchFrame g;
        g.strokes.push_back(segment({0, 0}, {4, 0}));
        const MetricsReport m = compute_metrics(SketchVideo{{f, g}});
        CHECK(m.max_length_deviation == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(m.total_arap_energy == 0.0);
    }
}

TEST_CASE("metrics json") {
    const SketchVideo v{{triangle_sketch(3), triangle_sketch(4)}};
    const nlohmann::json j = metrics_to_json(compute_metrics(v));
    CHECK(j.at("schema") == kMetricsSchema);
    CHECK(j.at("frame_count") == 2);
    CHECK(j.at("max_length_deviation").get<double>() == doctest::Approx(1.0));
    CHECK(j.at("stroke_lengths").size() == 2);
    CHECK(j.at("arap_energy").size() == 2);
}

TEST_CASE("loss csv") {
    LossBreakdown b{1.0, 2.5, 0.0, 4.0, 7.5};
    const std::string csv = format_loss_csv({b, b});
    CHECK(csv.rfind("iter,length,area,arap,guidance,total\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("\n1,1,2.5,0,4,7.5\n") != std::string::npos);
}

TEST_CASE("raster frames") {
    SketchFrame f;
    f.strokes.push_back(segment({10, 50}, {200, 50}));
    const RgbImage img = rasterize(f);
    CHECK(img.width == 256);
    CHECK(img.height == 256);
    CHECK(img.pixels.size() == 256u * 256u * 3u);
    CHECK(img.is_black(100, 50));
    CHECK(img.is_black(10, 50));
    CHECK_FALSE(img.is_black(100, 100));
    CHECK_FALSE(img.is_black(5, 50));
    const std::string ppm = encode_ppm(img);
    CHECK(ppm.rfind("P6\n256 256\n255\n", 0) == 0);
    CHECK(ppm.size() == 15 + 256u * 256u * 3u);
    // Points off the canvas are clipped.
    SketchFrame wide;
    wide.strokes.push_back(segment({-100, -100}, {400, 400}));
    CHECK(rasterize(wide).is_black(128, 128));
}

TEST_CASE("animate writes a complete run directory") {
    const auto dir = scratch_dir("animate");
    RunConfig cfg = small_run(dir);
    cfg.exports = ExportOptions::parse("svg,ppm,csv,metrics,checkpoint");
    std::ostringstream err;
    REQUIRE(run_animate(cfg, err) == kExitOk);

    std::vector<std::string> svgs;
    for (const auto& entry : std::filesystem::directory_iterator(cfg.output)) {
        if (entry.path().extension() == ".svg") {
            svgs.push_back(entry.path().filename().string());
        }
    }
    std::sort(svgs.begin(), svgs.end());
    REQUIRE(svgs.size() == cfg.train.frames);
    CHECK(svgs.front() == "frame_0000.svg");
    CHECK(svgs.back() == "frame_0005.svg");
    CHECK(std::filesystem::exists(cfg.output / "frame_0005.ppm"));
    CHECK(std::filesystem::exists(cfg.output / "params.smv"));

    const std::string csv = read_file(cfg.output / "loss.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == cfg.train.iterations + 1);
    const nlohmann::json metrics = nlohmann::json::parse(read_file(cfg.output / "metrics.json"));
    CHECK(metrics.at("schema") == 1);
    CHECK(metrics.at("frame_count") == cfg.train.frames);
}

TEST_CASE("metrics of an exported run match training") {
    const auto dir = scratch_dir("selfcheck");
    const RunConfig cfg = small_run(dir);
    const AnimateResult result = animate(cfg);
    const MetricsReport m = run_metrics(cfg.output, cfg.arap.fit_mode);
    REQUIRE(m.arap_energy.size() == result.report.final_arap.size());
    for (std::size_t i = 0; i < m.arap_energy.size(); ++i) {
        CHECK(std::abs(m.arap_energy[i] - result.report.final_arap[i]) <= 1e-9);
    }
    CHECK(m.max_length_deviation == result.metrics.max_length_deviation);
    CHECK(run_metrics(cfg.output).frame_count == cfg.train.frames);

    // Unparseable frames are input errors.
    write_file(cfg.output / "frame_0002.svg", "garbage");
    try {
        run_metrics(cfg.output);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(exit_code_for(e) == kExitInput);
    }
}

TEST_CASE("ablation emits the three labeled rows") {
    const auto dir = scratch_dir("ablation");
    RunConfig cfg = small_run(dir);
    cfg.train.iterations = 10;
    cfg.exports = ExportOptions::parse("");
    const std::vector<AblationRow> rows = ablation(cfg);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].label == "full");
    CHECK(rows[1].label == "no_la");
    CHECK(rows[2].label == "no_arap");
    CHECK(rows[1].final_loss.total != rows[0].final_loss.total);

    const std::string table = format_ablation_table(rows);
    CHECK(table.rfind("config,max_length_deviation,", 0) == 0);
    CHECK(table.find("\nfull,") != std::string::npos);
    CHECK(table.find("\nno_la,") != std::string::npos);
    CHECK(table.find("\nno_arap,") != std::string::npos);
    CHECK(format_ablation_table(ablation(cfg)) == table);

    std::ostringstream out;
    std::ostringstream err;
    CHECK(run_ablation(cfg, out, err) == kExitOk);
    CHECK(out.str() == table);
    CHECK(read_file(cfg.output / "ablation.csv") == table);
}

} // TEST_SUITE
