// Copyright 2026 The QTCNN Bench Authors
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


/**
 * @file
 * Batch commands. Each takes a resolved RunConfig, writes its artifacts
 * under out_dir and prints progress to `log`.
 *
 *   synth     -> panel.csv
 *   prepare   -> train.qts, test.qts, prepare_stats.txt
 *   train     -> model_<kind>.json
 *   backtest  -> report_<kind>.txt (report_<source>.txt for foresight/random)
 *   bench     -> timing table on `log`
 */

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "qtcnn/app/run_config.hpp"
#include "qtcnn/backtest/report.hpp"
#include "qtcnn/datapipe/pipeline.hpp"

namespace qtcnn::app {

struct SynthResult {
    std::filesystem::path path;
    std::size_t rows = 0;
};

struct PrepareResult {
    datapipe::PipelineStats stats;
    std::filesystem::path train_path;
    std::filesystem::path test_path;
};

struct TrainResult {
    std::filesystem::path checkpoint;
    std::vector<double> loss_curve;
    std::size_t samples = 0;
};

struct BacktestResult {
    backtest::Report report;
    std::filesystem::path path;
    std::size_t skipped_days = 0;
};

struct BenchRow {
    std::string model;
    double seconds_per_iteration = 0.0;
    double relative = 0.0;
};

std::filesystem::path panel_path(const RunConfig& c);
std::filesystem::path train_set_path(const RunConfig& c);
std::filesystem::path test_set_path(const RunConfig& c);
std::filesystem::path checkpoint_path(const RunConfig& c);
std::filesystem::path report_path(const RunConfig& c);

SynthResult run_synth(const RunConfig& c, std::ostream& log);
PrepareResult run_prepare(const RunConfig& c, std::ostream& log);
TrainResult run_train(const RunConfig& c, std::ostream& log);
BacktestResult run_backtest(const RunConfig& c, std::ostream& log);
std::vector<BenchRow> run_bench(const RunConfig& c, std::ostream& log);

}  // namespace qtcnn::app
