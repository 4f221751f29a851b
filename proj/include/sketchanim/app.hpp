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

#include <sketchanim/config.hpp>
#include <sketchanim/error.hpp>
#include <sketchanim/metrics.hpp>
#include <sketchanim/train.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sketchanim {

/// Process exit statuses of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitConfig = 2,
    kExitNonFinite = 3,
};

/// Maps an error to the exit status of the command that raised it.
int exit_code_for(const Error& e);

/// "iter,length,area,arap,guidance,total" followed by one row per entry.
std::string format_loss_csv(const std::vector<LossBreakdown>& history);

struct AnimateResult {
    SketchFrame sketch;
    TrainReport report;
    MetricsReport metrics;
};

/// Parses the input, trains, and writes the selected outputs into
/// cfg.output. Throws on any failure.
AnimateResult animate(const RunConfig& cfg);

/// Writes frames, rasters, loss.csv, metrics.json and params.smv (as selected
/// by cfg.exports) for a finished run into `dir`.
void write_run_outputs(const std::filesystem::path& dir, const RunConfig& cfg, const AnimateResult& result);

/// animate() with errors reported as one line on `err` and mapped to an exit
/// status.
int run_animate(const RunConfig& cfg, std::ostream& err);

/// Loads frame_*.svg from `dir` and recomputes every metric.
MetricsReport run_metrics(const std::filesystem::path& dir, FitMode fit_mode = FitMode::RotationThenScale);

struct AblationRow {
    std::string label; // full, no_la, no_arap
    LossBreakdown final_loss;
    MetricsReport metrics;
};

/// Trains the full configuration, then lambda_l = lambda_a = 0, then
/// lambda_arap = 0, all with cfg's seed. Each run's outputs go to
/// cfg.output / label.
std::vector<AblationRow> ablation(const RunConfig& cfg);

/// CSV table with one row per configuration.
std::string format_ablation_table(const std::vector<AblationRow>& rows);

/// ablation() followed by writing ablation.csv into cfg.output and printing
/// the table on `out`.
int run_ablation(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace sketchanim
