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
#include <sketchanim/config.hpp>
#include <sketchanim/log.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

using namespace sketchanim;

namespace {

// Command-line values; only options the user actually passed are applied on
// top of the config file.
struct RunFlags {
    std::string config;
    std::string input;
    std::string out;
    std::size_t frames = 0;
    int iters = 0;
    double lambda_l = 0.0;
    double lambda_a = 0.0;
    double lambda_arap = 0.0;
    std::string length_anchor;
    std::string fit_mode;
    std::string wiring;
    std::string composition;
    std::string oracle;
    std::uint64_t seed = 0;
    int log_every = 0;
    double lr = 0.0;
    bool cosine_decay = false;
    int frequencies = 0;
    int hidden_width = 0;
    int hidden_layers = 0;
    int feature_dim = 0;
    int samples_u = 0;
    int samples_t = 0;
    std::string canvas;
    std::string exports;

    CLI::App* app = nullptr;

    void attach(CLI::App* sub) {
        app = sub;
        sub->add_option("--config", config, "JSON config file; flags override its values");
        sub->add_option("--input", input, "input sketch (SVG)");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--frames", frames, "number of frames (default 24)");
        sub->add_option("--iters", iters, "optimization iterations (default 1000)");
        sub->add_option("--lambda-l", lambda_l, "length term weight (default 0.1)");
        sub->add_option("--lambda-a", lambda_a, "swept area term weight (default 1e-5)");
        sub->add_option("--lambda-arap", lambda_arap, "ARAP term weight (default 0.1)");
        sub->add_option("--length-anchor", length_anchor, "initial | previous");
        sub->add_option("--fit-mode", fit_mode, "rotation | rotation_scale");
        sub->add_option("--wiring", wiring, "joint | posthoc");
        sub->add_option("--composition", composition, "recurrent | anchored");
        sub->add_option("--oracle", oracle, "guidance oracle, e.g. rigid:angle=0.1");
        sub->add_option("--seed", seed, "random seed (default 0)");
        sub->add_option("--log-every", log_every, "progress line every N iterations (0 = off)");
        sub->add_option("--lr", lr, "Adam learning rate (default 1e-3)");
        sub->add_flag("--cosine-decay", cosine_decay, "cosine learning-rate decay");
        sub->add_option("--frequencies", frequencies, "positional encoding frequencies (default 6)");
        sub->add_option("--hidden-width", hidden_width, "MLP hidden width (default 64)");
        sub->add_option("--hidden-layers", hidden_layers, "MLP hidden layers (default 2)");
        sub->add_option("--feature-dim", feature_dim, "shared feature size (default 128)");
        sub->add_option("--samples-u", samples_u, "curve quadrature samples (default 1000)");
        sub->add_option("--samples-t", samples_t, "time quadrature samples (default 16)");
        sub->add_option("--canvas", canvas, "auto | normalize | verbatim");
        sub->add_option("--export", exports, "comma list of svg, ppm, csv, metrics, checkpoint");
    }

    bool given(const std::string& name) const {
        return app->get_option(name)->count() > 0;
    }

    RunConfig build() const {
        RunConfig cfg = given("--config") ? load_run_config(config) : RunConfig{};
        if (given("--input")) cfg.input = input;
        if (given("--out")) cfg.output = out;
        if (given("--frames")) cfg.train.frames = frames;
        if (given("--iters")) cfg.train.iterations = iters;
        if (given("--lambda-l")) cfg.la.lambda_l = lambda_l;
        if (given("--lambda-a")) cfg.la.lambda_a = lambda_a;
        if (given("--lambda-arap")) cfg.arap.lambda_arap = lambda_arap;
        if (given("--length-anchor")) cfg.la.length_anchor = parse_length_anchor(length_anchor);
        if (given("--fit-mode")) cfg.arap.fit_mode = parse_fit_mode(fit_mode);
        if (given("--wiring")) cfg.train.wiring = parse_wiring(wiring);
        if (given("--composition")) cfg.train.composition = parse_composition(composition);
        if (given("--oracle")) cfg.oracle = oracle;
        if (given("--seed")) cfg.train.seed = seed;
        if (given("--log-every")) cfg.train.log_every = log_every;
        if (given("--lr")) cfg.train.learning_rate = lr;
        if (given("--cosine-decay")) cfg.train.cosine_decay = cosine_decay;
        if (given("--frequencies")) cfg.train.motion.encoding.num_frequencies = frequencies;
        if (given("--hidden-width")) cfg.train.motion.hidden_width = hidden_width;
        if (given("--hidden-layers")) cfg.train.motion.hidden_layers = hidden_layers;
        if (given("--feature-dim")) cfg.train.motion.feature_dim = feature_dim;
        if (given("--samples-u")) cfg.train.quadrature.samples_u = samples_u;
        if (given("--samples-t")) cfg.train.quadrature.samples_t = samples_t;
        if (given("--canvas")) cfg.canvas = parse_canvas_mode(canvas);
        if (given("--export")) cfg.exports = ExportOptions::parse(exports);
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sketch animation by trajectory optimization"};
    app.require_subcommand(1);
    app.fallthrough();
    bool verbose = false;
    bool quiet = false;
    app.add_flag("-v,--verbose", verbose, "progress and timing on stderr");
    app.add_flag("-q,--quiet", quiet, "suppress warnings");

    RunFlags animate_flags;
    animate_flags.attach(app.add_subcommand("animate", "optimize an animation for one sketch"));
    RunFlags ablate_flags;
    ablate_flags.attach(app.add_subcommand("ablate", "run the full, no_la and no_arap configurations"));

    CLI::App* metrics_cmd = app.add_subcommand("metrics", "recompute metrics of a frame directory");
    std::string metrics_dir;
    std::string metrics_fit = "rotation_scale";
    std::string metrics_out;
    metrics_cmd->add_option("dir", metrics_dir, "directory with frame_*.svg")->required();
    metrics_cmd->add_option("--fit-mode", metrics_fit, "rotation | rotation_scale");
    metrics_cmd->add_option("--out", metrics_out, "also write the JSON report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    set_log_level(quiet ? LogLevel::Quiet : verbose ? LogLevel::Info : LogLevel::Warning);

    if (metrics_cmd->parsed()) {
        try {
            const FitMode fit = parse_fit_mode(metrics_fit);
            const std::string text = metrics_to_json(run_metrics(metrics_dir, fit)).dump(2) + "\n";
            std::cout << text;
            if (!metrics_out.empty()) {
                std::ofstream out(metrics_out, std::ios::binary);
                out << text;
                if (!out) {
                    throw Error(ErrorCode::Io, "cannot write " + metrics_out);
                }
            }
            return kExitOk;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_code_for(e);
        }
    }

    const bool is_animate = app.got_subcommand("animate");
    RunConfig cfg;
    try {
        cfg = (is_animate ? animate_flags : ablate_flags).build();
        if (verbose && cfg.train.log_every == 0) {
            cfg.train.log_every = 100;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return is_animate ? run_animate(cfg, std::cerr) : run_ablation(cfg, std::cout, std::cerr);
}
