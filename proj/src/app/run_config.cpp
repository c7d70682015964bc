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


#include "qtcnn/app/run_config.hpp"

#include <fstream>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/format.hpp"

namespace qtcnn::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class Int>
Int to_int(const std::string& key, const std::string& value) {
    const auto v = parse_int<Int>(value);
    if (!v) throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return *v;
}

double to_real(const std::string& key, const std::string& value) {
    const auto v = parse_double(value);
    if (!v || !std::isfinite(*v)) throw ConfigError(key + ": expected a number, got '" + value + "'");
    return *v;
}

}  // namespace

std::string_view score_source_name(ScoreSource s) {
    switch (s) {
        case ScoreSource::Model: return "model";
        case ScoreSource::Foresight: return "foresight";
        case ScoreSource::Random: return "random";
    }
    return "model";
}

const std::vector<std::string>& run_config_keys() {
    static const std::vector<std::string> keys = {
        "model",     "n_qubits", "depth",  "epochs",      "batch_size",   "lr",           "optimizer",
        "weight_decay", "data",  "stock_list", "stocks",  "days",         "rho",          "sampling",
        "stride",    "fraction", "p",      "seq_len",     "k",            "bootstrap",    "score_source",
        "bench_models", "bench_iterations", "bench_batch", "out_dir", "seed",    "workers"};
    return keys;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "model") {
        model = models::parse_model_kind(value);
    } else if (key == "n_qubits") {
        n_qubits = to_int<int>(key, value);
    } else if (key == "depth") {
        depth = to_int<int>(key, value);
    } else if (key == "epochs") {
        epochs = to_int<int>(key, value);
    } else if (key == "batch_size") {
        batch_size = to_int<std::size_t>(key, value);
    } else if (key == "lr") {
        lr = to_real(key, value);
    } else if (key == "optimizer") {
        optimizer = models::parse_optimizer(value);
    } else if (key == "weight_decay") {
        weight_decay = to_real(key, value);
    } else if (key == "data") {
        data = value;
    } else if (key == "stock_list") {
        stock_list = value;
    } else if (key == "stocks") {
        stocks = to_int<std::size_t>(key, value);
    } else if (key == "days") {
        days = to_int<std::size_t>(key, value);
    } else if (key == "rho") {
        rho = to_real(key, value);
    } else if (key == "sampling") {
        if (value != "auto" && value != "none" && value != "stride" && value != "fraction") {
            throw ConfigError("sampling: expected auto, none, stride or fraction, got '" + value + "'");
        }
        sampling = value;
    } else if (key == "stride") {
        stride = to_int<std::size_t>(key, value);
    } else if (key == "fraction") {
        fraction = to_real(key, value);
    } else if (key == "p") {
        p = to_int<std::size_t>(key, value);
    } else if (key == "seq_len") {
        seq_len = to_int<std::size_t>(key, value);
    } else if (key == "k") {
        k = to_int<std::size_t>(key, value);
    } else if (key == "bootstrap") {
        bootstrap = to_int<std::size_t>(key, value);
    } else if (key == "score_source") {
        if (value == "model") {
            score_source = ScoreSource::Model;
        } else if (value == "foresight") {
            score_source = ScoreSource::Foresight;
        } else if (value == "random") {
            score_source = ScoreSource::Random;
        } else {
            throw ConfigError("score_source: expected model, foresight or random, got '" + value + "'");
        }
    } else if (key == "bench_models") {
        bench_models = value;
    } else if (key == "bench_iterations") {
        bench_iterations = to_int<std::size_t>(key, value);
    } else if (key == "bench_batch") {
        bench_batch = to_int<std::size_t>(key, value);
    } else if (key == "out_dir") {
        out_dir = value;
    } else if (key == "seed") {
        seed = to_int<std::uint64_t>(key, value);
    } else if (key == "workers") {
        workers = to_int<int>(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void RunConfig::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
    if (stocks == 0 || days == 0) throw ConfigError("stocks and days must be positive");
    if (stride < 1) throw ConfigError("stride must be >= 1");
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("fraction must lie in (0, 1]");
    if (sampling == "auto" && stride > 1 && fraction < 1.0) {
        throw ConfigError("both stride and fraction given; set sampling explicitly");
    }
    if (p < 1) throw ConfigError("p must be >= 1");
    if (seq_len < 1) throw ConfigError("seq_len must be >= 1");
    if (k < 1) throw ConfigError("k must be >= 1");
    if (bootstrap < 100) throw ConfigError("bootstrap must be >= 100");
    if (bench_iterations < 1 || bench_batch < 1) throw ConfigError("bench needs iterations and batch >= 1");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    model_config(seq_len, 0).validate();
}

models::ModelConfig RunConfig::model_config(std::size_t seq_len_of_data, std::size_t n_features) const {
    models::ModelConfig c = models::default_model_config(model);
    if (n_qubits) c.n_qubits = *n_qubits;
    if (depth) c.depth = *depth;
    if (epochs) c.epochs = *epochs;
    if (batch_size) c.batch_size = *batch_size;
    if (lr) c.lr = *lr;
    if (optimizer) c.optimizer = *optimizer;
    if (weight_decay) c.weight_decay = *weight_decay;
    c.seq_len = seq_len_of_data;
    c.n_features = n_features;
    c.seed = seed;
    return c;
}

datapipe::PipelineConfig RunConfig::pipeline_config() const {
    datapipe::PipelineConfig c;
    std::string mode = sampling;
    if (mode == "auto") mode = stride > 1 ? "stride" : (fraction < 1.0 ? "fraction" : "none");
    c.sampling = mode == "stride"     ? datapipe::SamplingMode::Stride
                 : mode == "fraction" ? datapipe::SamplingMode::Fraction
                                      : datapipe::SamplingMode::None;
    c.stride = stride;
    c.fraction = fraction;
    c.seed = seed;
    c.p = p;
    c.seq_len = seq_len;
    return c;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

RunConfig resolve_config(const std::vector<std::pair<std::string, std::string>>& file_entries,
                         const std::vector<std::pair<std::string, std::string>>& flag_entries) {
    RunConfig c;
    for (const auto& [k, v] : file_entries) c.set(k, v);
    for (const auto& [k, v] : flag_entries) c.set(k, v);
    c.validate();
    return c;
}

}  // namespace qtcnn::app
