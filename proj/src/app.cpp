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

#include <sketchanim/app.hpp>

#include <sketchanim/frames.hpp>
#include <sketchanim/log.hpp>
#include <sketchanim/motion.hpp>
#include <sketchanim/oracle.hpp>
#include <sketchanim/raster.hpp>
#include <sketchanim/svg.hpp>
#include <sketchanim/text.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace sketchanim {

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing " + path.string());
    }
}

int report_error(std::ostream& err, const std::exception& e, int code) {
    err << "error: " << e.what() << '\n';
    return code;
}

} // namespace

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ShapeMismatch:
        return kExitConfig;
    case ErrorCode::NonFiniteLoss:
        return kExitNonFinite;
    case ErrorCode::TooFewPoints:
    case ErrorCode::AllCollinear:
    case ErrorCode::EmptyMesh:
    case ErrorCode::MalformedSvg:
    case ErrorCode::UnsupportedCommand:
    case ErrorCode::EmptySketch:
    case ErrorCode::Io:
        return kExitInput;
    }
    return kExitInput;
}

std::string format_loss_csv(const std::vector<LossBreakdown>& history) {
    std::string out = "iter,length,area,arap,guidance,total\n";
    for (std::size_t i = 0; i < history.size(); ++i) {
        const LossBreakdown& b = history[i];
        out += std::to_string(i) + ',' + format_number(b.length_term) + ',' + format_number(b.area_term) + ','
               + format_number(b.arap_term) + ',' + format_number(b.guidance_term) + ','
               + format_number(b.total) + '\n';
    }
    return out;
}

AnimateResult animate(const RunConfig& cfg) {
    cfg.validate();
    const OracleSpec spec = OracleSpec::parse(cfg.oracle);
    AnimateResult result;
    result.sketch = parse_svg_file(cfg.input, SvgParseOptions{cfg.canvas});
    const std::unique_ptr<GuidanceOracle> oracle = OracleRegistry::builtin().create(spec);
    result.report = train(result.sketch, *oracle, cfg.la, cfg.arap, cfg.train);
    result.metrics = compute_metrics(result.report.final_video, cfg.arap.fit_mode);
    log_info("trained " + std::to_string(cfg.train.iterations) + " iterations in "
             + format_number(result.report.wall_seconds) + " s");
    write_run_outputs(cfg.output, cfg, result);
    return result;
}

void write_run_outputs(const std::filesystem::path& dir, const RunConfig& cfg, const AnimateResult& result) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
    }
    const SketchVideo& video = result.report.final_video;
    if (cfg.exports.svg) {
        write_frame_sequence(dir, video);
    }
    if (cfg.exports.ppm) {
        for (std::size_t i = 0; i < video.frames.size(); ++i) {
            write_ppm_file(dir / frame_file_name(i, "ppm"), rasterize(video.frames[i]));
        }
    }
    if (cfg.exports.csv) {
        write_text_file(dir / "loss.csv", format_loss_csv(result.report.history));
    }
    if (cfg.exports.metrics) {
        write_text_file(dir / "metrics.json", metrics_to_json(result.metrics).dump(2) + "\n");
    }
    if (cfg.exports.checkpoint) {
        save_checkpoint(dir / "params.smv", result.report.params);
    }
}

int run_animate(const RunConfig& cfg, std::ostream& err) {
    try {
        animate(cfg);
        return kExitOk;
    } catch (const NonFiniteLossError& e) {
        return report_error(err, e, kExitNonFinite);
    } catch (const Error& e) {
        return report_error(err, e, exit_code_for(e));
    } catch (const std::exception& e) {
        return report_error(err, e, kExitInput);
    }
}

MetricsReport run_metrics(const std::filesystem::path& dir, FitMode fit_mode) {
    return compute_metrics(load_frame_sequence(dir), fit_mode);
}

std::vector<AblationRow> ablation(const RunConfig& cfg) {
    cfg.validate();
    const OracleSpec spec = OracleSpec::parse(cfg.oracle);
    const SketchFrame sketch = parse_svg_file(cfg.input, SvgParseOptions{cfg.canvas});
    const std::unique_ptr<GuidanceOracle> oracle = OracleRegistry::builtin().create(spec);

    struct Variant {
        const char* label;
        LaConfig la;
        ArapConfig arap;
    };
    std::vector<Variant> variants = {{"full", cfg.la, cfg.arap}, {"no_la", cfg.la, cfg.arap}, {"no_arap", cfg.la, cfg.arap}};
    variants[1].la.lambda_l = 0.0;
    variants[1].la.lambda_a = 0.0;
    variants[2].arap.lambda_arap = 0.0;

    std::vector<AblationRow> rows;
    for (const Variant& v : variants) {
        RunConfig run = cfg;
        run.la = v.la;
        run.arap = v.arap;
        AnimateResult result;
        result.sketch = sketch;
        result.report = train(sketch, *oracle, run.la, run.arap, run.train);
        // Metrics share the fit mode so ARAP energies are comparable across rows.
        result.metrics = compute_metrics(result.report.final_video, cfg.arap.fit_mode);
        log_info(std::string(v.label) + ": trained in " + format_number(result.report.wall_seconds) + " s");
        write_run_outputs(cfg.output / v.label, run, result);
        rows.push_back({v.label, result.report.final_loss, std::move(result.metrics)});
    }
    return rows;
}

std::string format_ablation_table(const std::vector<AblationRow>& rows) {
    std::string out = "config,max_length_deviation,mean_length_deviation,total_swept_area,total_arap_energy,"
                      "mean_speed,mean_acceleration,final_guidance,final_total\n";
    for (const AblationRow& r : rows) {
        const MetricsReport& m = r.metrics;
        out += r.label + ',' + format_number(m.max_length_deviation) + ',' + format_number(m.mean_length_deviation)
               + ',' + format_number(m.total_swept_area) + ',' + format_number(m.total_arap_energy) + ','
               + format_number(m.mean_speed) + ',' + format_number(m.mean_acceleration) + ','
               + format_number(r.final_loss.guidance_term) + ',' + format_number(r.final_loss.total) + '\n';
    }
    return out;
}

int run_ablation(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<AblationRow> rows = ablation(cfg);
        const std::string table = format_ablation_table(rows);
        write_text_file(cfg.output / "ablation.csv", table);
        out << table;
        return kExitOk;
    } catch (const NonFiniteLossError& e) {
        return report_error(err, e, kExitNonFinite);
    } catch (const Error& e) {
        return report_error(err, e, exit_code_for(e));
    } catch (const std::exception& e) {
        return report_error(err, e, kExitInput);
    }
}

} // namespace sketchanim
