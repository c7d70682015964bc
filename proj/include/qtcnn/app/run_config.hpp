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
 * Run configuration shared by every command.
 *
 * A config file holds one `key = value` pair per line; `#` starts a comment.
 * Keys are the RunConfig field names below. Command-line flags use the same
 * names with dashes (`--batch-size`), and override the file, which overrides
 * the defaults.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtcnn/datapipe/pipeline.hpp"
#include "qtcnn/models/config.hpp"

namespace qtcnn::app {

enum class ScoreSource { Model, Foresight, Random };

std::string_view score_source_name(ScoreSource s);

struct RunConfig {
    // Model. Unset fields take the per-kind defaults.
    models::ModelKind model = models::ModelKind::Qtcnn;
    std::optional<int> n_qubits;
    std::optional<int> depth;
    std::optional<int> epochs;
    std::optional<std::size_t> batch_size;
    std::optional<double> lr;
    std::optional<models::OptimizerKind> optimizer;
    std::optional<double> weight_decay;

    // Data source: a panel CSV path, or "synthetic" for the generator.
    std::string data = "synthetic";
    std::string stock_list;
    std::size_t stocks = 50;
    std::size_t days = 300;
    double rho = 0.5;

    // Pipeline. sampling "auto" picks stride when stride > 1, fraction when
    // fraction < 1, otherwise none.
    std::string sampling = "auto";
    std::size_t stride = 1;
    double fraction = 1.0;
    std::size_t p = 200;
    std::size_t seq_len = 20;

    // Backtest.
    std::size_t k = 200;
    std::size_t bootstrap = 1000;
    ScoreSource score_source = ScoreSource::Model;

    // Bench.
    std::string bench_models = "qtcnn,qcnn,qnn,mlp";
    std::size_t bench_iterations = 5;
    std::size_t bench_batch = 8;

    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int workers = 0;

    /// Throws ConfigError for an unknown key or a malformed value.
    void set(const std::string& key, const std::string& value);
    /// Throws ConfigError on out-of-range values.
    void validate() const;

    /// The model configuration for training data with F features.
    models::ModelConfig model_config(std::size_t seq_len_of_data, std::size_t n_features) const;
    datapipe::PipelineConfig pipeline_config() const;

    std::filesystem::path out(const std::string& name) const { return std::filesystem::path(out_dir) / name; }
};

/// Every key RunConfig::set accepts, in declaration order.
const std::vector<std::string>& run_config_keys();

/// Parses a key-value file. Throws ConfigError with the line number.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// defaults <- file entries <- flag entries.
RunConfig resolve_config(const std::vector<std::pair<std::string, std::string>>& file_entries,
                         const std::vector<std::pair<std::string, std::string>>& flag_entries);

}  // namespace qtcnn::app
