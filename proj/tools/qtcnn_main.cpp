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


// qtcnn: synth, prepare, train, backtest and bench commands.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "qtcnn/app/commands.hpp"
#include "qtcnn/app/run_config.hpp"
#include "qtcnn/common/errors.hpp"

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

struct Option {
    const char* key;
    const char* flag;
    const char* help;
};

const std::map<std::string, Option>& options() {
    static const std::map<std::string, Option> table = [] {
        const std::vector<Option> list = {
            {"model", "--model", "model kind: qtcnn, qcnn, qnn, mlp or momentum"},
            {"n_qubits", "--n-qubits", "circuit width (default 8)"},
            {"depth", "--depth", "conv/pool or ansatz layers (default 3; qnn 2)"},
            {"epochs", "--epochs", "training epochs (default 50)"},
            {"batch_size", "--batch-size", "mini-batch size (default 128; qnn 512)"},
            {"lr", "--lr", "learning rate (default 1e-3; qnn 2e-3)"},
            {"optimizer", "--optimizer", "adamw or adam"},
            {"weight_decay", "--weight-decay", "weight decay (default 1e-2; qnn 0)"},
            {"data", "--data", "panel CSV path, or 'synthetic'"},
            {"stock_list", "--stock-list", "stock list CSV used to keep Universe0 codes"},
            {"stocks", "--stocks", "synthetic: number of stocks"},
            {"days", "--days", "synthetic: number of trading days"},
            {"rho", "--rho", "synthetic: signal strength in [0, 1]"},
            {"sampling", "--sampling", "auto, none, stride or fraction"},
            {"stride", "--stride", "keep every k-th trading day"},
            {"fraction", "--fraction", "keep this fraction of days per year"},
            {"p", "--p", "labeled extremes per side per day (default 200)"},
            {"seq_len", "--seq-len", "window length in days (default 20)"},
            {"k", "--k", "portfolio names per leg (default 200)"},
            {"bootstrap", "--bootstrap", "bootstrap resamples (default 1000)"},
            {"score_source", "--score-source", "model, foresight or random"},
            {"bench_models", "--models", "comma-separated model kinds"},
            {"bench_iterations", "--iterations", "timed iterations per model"},
            {"bench_batch", "--batch", "samples per iteration"},
            {"out_dir", "--out-dir", "artifact directory (default .)"},
            {"seed", "--seed", "root random seed"},
            {"workers", "--workers", "maximum worker threads (0 = all)"},
        };
        std::map<std::string, Option> m;
        for (const auto& o : list) m.emplace(o.key, o);
        return m;
    }();
    return table;
}

struct Command {
    CLI::App* app = nullptr;
    std::string config_file;
    Entries flags;
};

void add_options(Command& cmd, const std::vector<std::string>& keys) {
    cmd.app->add_option("--config", cmd.config_file, "key = value config file (flags override it)");
    for (const auto& key : keys) {
        const Option& o = options().at(key);
        cmd.app->add_option_function<std::string>(
            o.flag, [&cmd, key](const std::string& v) { cmd.flags.emplace_back(key, v); }, o.help);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum temporal CNN equity ranking: data, training, backtest, timing"};
    app.require_subcommand(1);

    const std::vector<std::string> common = {"out_dir", "seed", "workers"};
    auto with_common = [&](std::vector<std::string> keys) {
        keys.insert(keys.end(), common.begin(), common.end());
        return keys;
    };

    std::map<std::string, Command> commands;
    auto add = [&](const std::string& name, const std::string& help, std::vector<std::string> keys) {
        Command& c = commands[name];
        c.app = app.add_subcommand(name, help);
        add_options(c, with_common(std::move(keys)));
    };
    add("synth", "Write a synthetic panel CSV to <out_dir>/panel.csv", {"stocks", "days", "rho"});
    add("prepare", "Build train/test sample sets from a panel",
        {"data", "stock_list", "stocks", "days", "rho", "sampling", "stride", "fraction", "p", "seq_len"});
    add("train", "Train a model on <out_dir>/train.qts",
        {"model", "n_qubits", "depth", "epochs", "batch_size", "lr", "optimizer", "weight_decay"});
    add("backtest", "Score <out_dir>/test.qts and write a long-short report",
        {"model", "k", "bootstrap", "score_source"});
    add("bench", "Time forward-backward iterations per model",
        {"bench_models", "bench_iterations", "bench_batch", "n_qubits", "depth", "seq_len"});

    CLI11_PARSE(app, argc, argv);

    for (auto& [name, cmd] : commands) {
        if (!cmd.app->parsed()) continue;
        qtcnn::app::RunConfig config;
        try {
            const Entries file = cmd.config_file.empty() ? Entries{} : qtcnn::app::read_config_file(cmd.config_file);
            config = qtcnn::app::resolve_config(file, cmd.flags);
        } catch (const std::exception& e) {
            std::cerr << name << ": usage error: " << e.what() << '\n';
            return 2;
        }
        try {
            if (name == "synth") qtcnn::app::run_synth(config, std::cout);
            if (name == "prepare") qtcnn::app::run_prepare(config, std::cout);
            if (name == "train") qtcnn::app::run_train(config, std::cout);
            if (name == "backtest") qtcnn::app::run_backtest(config, std::cout);
            if (name == "bench") qtcnn::app::run_bench(config, std::cout);
        } catch (const qtcnn::ConfigError& e) {
            std::cerr << name << ": usage error: " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            std::cerr << name << ": " << e.what() << '\n';
            return 1;
        }
    }
    return 0;
}
