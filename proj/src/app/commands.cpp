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


#include "qtcnn/app/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qtcnn/backtest/backtest.hpp"
#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/format.hpp"
#include "qtcnn/common/rng.hpp"
#include "qtcnn/datapipe/panel.hpp"
#include "qtcnn/datapipe/sample_set.hpp"
#include "qtcnn/datapipe/synthetic.hpp"
#include "qtcnn/models/model.hpp"

namespace qtcnn::app {

namespace fs = std::filesystem;
using datapipe::SampleSet;
using models::ModelKind;

namespace {

void ensure_out_dir(const RunConfig& c) {
    std::error_code ec;
    fs::create_directories(c.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + c.out_dir + ": " + ec.message());
}

datapipe::SyntheticConfig synthetic_config(const RunConfig& c) {
    datapipe::SyntheticConfig s;
    s.n_stocks = c.stocks;
    s.n_days = c.days;
    s.rho = c.rho;
    s.seed = c.seed;
    return s;
}

std::string model_name(ModelKind kind) { return std::string(models::model_kind_name(kind)); }

std::vector<ModelKind> parse_model_list(const std::string& list) {
    std::vector<ModelKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(models::parse_model_kind(item));
    }
    if (out.empty()) throw ConfigError("bench_models: no models given");
    return out;
}

std::vector<double> score_samples(const RunConfig& c, const SampleSet& test,
                                  std::vector<std::pair<std::string, std::string>>& fp, std::ostream& log) {
    std::vector<double> scores(test.size(), 0.0);
    switch (c.score_source) {
        case ScoreSource::Foresight:
            for (std::size_t i = 0; i < test.size(); ++i) {
                scores[i] = std::isnan(test.targets[i]) ? 0.0 : test.targets[i];
            }
            return scores;
        case ScoreSource::Random: {
            Rng rng = Rng::stream(c.seed, "random_scores");
            for (double& s : scores) s = rng.uniform();
            return scores;
        }
        case ScoreSource::Model: break;
    }
    if (c.model == ModelKind::Momentum) {
        const models::Model m(c.model_config(test.seq_len, test.n_features));
        for (const auto& kv : m.config().entries()) fp.push_back(kv);
        return models::predict_scores(m, test, c.workers);
    }
    const fs::path ckpt = checkpoint_path(c);
    const models::Model m = models::load_checkpoint(ckpt);
    if (m.kind() != c.model) {
        throw ConfigError("checkpoint " + ckpt.string() + " holds a " + model_name(m.kind()) + " model");
    }
    log << "backtest: loaded " << ckpt.string() << '\n';
    for (const auto& kv : m.config().entries()) fp.push_back(kv);
    return models::predict_scores(m, test, c.workers);
}

// Fixed random windows; the first `batch` samples form the timed batch,
// the rest only feed the PCA / min-max fits.
SampleSet bench_samples(std::size_t batch, std::size_t seq_len, std::size_t features, std::uint64_t seed) {
    const std::size_t n = batch + 64;
    SampleSet s;
    s.split = "bench";
    s.seq_len = seq_len;
    s.n_features = features;
    s.feature_names.assign(features, "x");
    Rng rng = Rng::stream(seed, "bench");
    s.sequences.resize(n * seq_len * features);
    for (double& v : s.sequences) v = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
        s.labels.push_back(static_cast<std::int8_t>(i % 2));
        s.keys.push_back({Date(static_cast<std::int32_t>(i)), 1});
        s.targets.push_back(0.0);
        s.tradable.push_back(1);
        for (std::size_t r = 0; r < datapipe::kRawColumns; ++r) s.raw_last.push_back(0.0);
    }
    return s;
}

}  // namespace

fs::path panel_path(const RunConfig& c) { return c.out("panel.csv"); }
fs::path train_set_path(const RunConfig& c) { return c.out("train.qts"); }
fs::path test_set_path(const RunConfig& c) { return c.out("test.qts"); }
fs::path checkpoint_path(const RunConfig& c) { return c.out("model_" + model_name(c.model) + ".json"); }

fs::path report_path(const RunConfig& c) {
    if (c.score_source != ScoreSource::Model) return c.out("report_" + std::string(score_source_name(c.score_source)) + ".txt");
    return c.out("report_" + model_name(c.model) + ".txt");
}

SynthResult run_synth(const RunConfig& c, std::ostream& log) {
    ensure_out_dir(c);
    const datapipe::Panel panel = datapipe::generate_synthetic(synthetic_config(c));
    SynthResult r{panel_path(c), panel.rows.size()};
    datapipe::write_panel_csv(panel, r.path);
    log << "synth: wrote " << r.rows << " rows (" << c.stocks << " stocks x " << c.days << " days, rho "
        << format_double(c.rho) << ") to " << r.path.string() << '\n';
    return r;
}

PrepareResult run_prepare(const RunConfig& c, std::ostream& log) {
    ensure_out_dir(c);
    datapipe::Panel panel;
    if (c.data == "synthetic") {
        panel = datapipe::generate_synthetic(synthetic_config(c));
        log << "prepare: generated synthetic panel with " << panel.rows.size() << " rows\n";
    } else {
        std::optional<fs::path> list;
        if (!c.stock_list.empty()) list = fs::path(c.stock_list);
        panel = datapipe::load_panel(c.data, list);
        log << "prepare: loaded " << panel.rows.size() << " rows from " << c.data << '\n';
    }
    datapipe::PipelineResult result = datapipe::run_pipeline(std::move(panel), c.pipeline_config());
    PrepareResult r{result.stats, train_set_path(c), test_set_path(c)};
    datapipe::write_sample_set(result.train, r.train_path);
    datapipe::write_sample_set(result.test, r.test_path);

    std::ofstream stats(c.out("prepare_stats.txt"));
    if (!stats) throw IoError("cannot write " + c.out("prepare_stats.txt").string());
    const auto& s = r.stats;
    stats << "panel_days=" << s.panel_days << "\nkept_days=" << s.kept_days << "\ntrain_days=" << s.train_days
          << "\ntest_days=" << s.test_days << "\ntrain_samples=" << s.train_samples
          << "\ntest_samples=" << s.test_samples << "\nlabeled_rows=" << s.labeled_rows
          << "\ntargets_filled=" << s.targets_filled << "\ntarget_compared=" << s.target_check.compared
          << "\ntarget_mismatched=" << s.target_check.mismatched
          << "\ntarget_max_abs_diff=" << format_double(s.target_check.max_abs_diff)
          << "\nnormalize_groups=" << s.normalize.groups << "\nnormalize_skipped=" << s.normalize.skipped_groups
          << '\n';
    for (const auto& line : s.log) log << "prepare: " << line << '\n';
    log << "prepare: wrote " << r.train_path.string() << " and " << r.test_path.string() << '\n';
    return r;
}

TrainResult run_train(const RunConfig& c, std::ostream& log) {
    ensure_out_dir(c);
    const SampleSet set = datapipe::read_sample_set(train_set_path(c));
    const models::ModelConfig mc = c.model_config(set.seq_len, set.n_features);
    mc.validate();
    models::Model model(mc);
    const auto t0 = std::chrono::steady_clock::now();
    TrainResult r;
    r.loss_curve = models::train(model, set, c.workers);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.samples = set.labeled_indices().size();
    r.checkpoint = checkpoint_path(c);
    models::save_checkpoint(model, r.checkpoint);
    log << "train: " << model_name(mc.kind) << " on " << r.samples << " samples, " << mc.epochs << " epochs, batch "
        << mc.batch_size << ", lr " << format_double(mc.lr) << ", " << models::optimizer_name(mc.optimizer) << '\n';
    if (!r.loss_curve.empty()) {
        log << "train: loss " << format_double(r.loss_curve.front()) << " -> " << format_double(r.loss_curve.back())
            << '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", secs);
    log << "train: " << buf << " s, wrote " << r.checkpoint.string() << '\n';
    return r;
}

BacktestResult run_backtest(const RunConfig& c, std::ostream& log) {
    ensure_out_dir(c);
    const SampleSet test = datapipe::read_sample_set(test_set_path(c));
    std::vector<std::pair<std::string, std::string>> fp = {
        {"score_source", std::string(score_source_name(c.score_source))},
        {"k", std::to_string(c.k)},
        {"bootstrap", std::to_string(c.bootstrap)},
        {"seed", std::to_string(c.seed)},
        {"test_samples", std::to_string(test.size())}};
    const auto scores = score_samples(c, test, fp, log);

    std::vector<Date> dates;
    std::vector<std::int64_t> codes;
    for (const auto& k : test.keys) {
        dates.push_back(k.date);
        codes.push_back(k.code);
    }
    auto days = backtest::group_by_date(dates, codes, scores, test.tradable, test.targets);
    const auto ls = backtest::run_long_short(std::move(days), c.k);
    for (Date d : ls.skipped) log << "backtest: skipped " << d.iso() << " (nothing tradable)\n";

    std::vector<double> values;
    for (const auto& d : ls.returns) values.push_back(d.value);
    const auto sr = backtest::try_sharpe(values);
    if (!sr) throw DataError("degenerate return series (zero standard deviation)");
    const auto ci = backtest::bootstrap_ci(values, c.bootstrap, c.seed);

    BacktestResult r;
    r.report.model = c.score_source == ScoreSource::Model ? model_name(c.model)
                                                          : std::string(score_source_name(c.score_source));
    r.report.k = c.k;
    r.report.seed = c.seed;
    r.report.n_days = values.size();
    r.report.sharpe = *sr;
    r.report.ci_low = ci.ci_low;
    r.report.ci_high = ci.ci_high;
    r.report.config_fingerprint = backtest::fingerprint(fp);
    r.report.returns = ls.returns;
    r.skipped_days = ls.skipped.size();
    r.path = report_path(c);
    backtest::write_report(r.report, r.path);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.4f (CI %.4f .. %.4f, SE %.4f)", *sr, ci.ci_low, ci.ci_high, ci.se);
    log << "backtest: " << r.report.model << " K=" << c.k << " over " << values.size() << " days, Sharpe " << buf
        << '\n';
    log << "backtest: wrote " << r.path.string() << '\n';
    return r;
}

std::vector<BenchRow> run_bench(const RunConfig& c, std::ostream& log) {
    const auto kinds = parse_model_list(c.bench_models);
    const SampleSet set = bench_samples(c.bench_batch, c.seq_len, datapipe::kNumFeatures, c.seed);
    std::vector<std::size_t> batch(c.bench_batch);
    std::iota(batch.begin(), batch.end(), 0);

    std::vector<BenchRow> rows;
    for (ModelKind kind : kinds) {
        if (kind == ModelKind::Momentum) throw ConfigError("bench: momentum has no training iteration");
        RunConfig rc = c;
        rc.model = kind;
        const models::ModelConfig mc = rc.model_config(set.seq_len, set.n_features);
        mc.validate();
        models::Model model(mc);
        model.fit_preprocessing(set);
        models::batch_gradient(model, set, batch, 0, c.workers);  // warm-up
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t it = 0; it < c.bench_iterations; ++it) {
            models::batch_gradient(model, set, batch, it + 1, c.workers);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back({model_name(kind), secs / static_cast<double>(c.bench_iterations), 0.0});
    }
    double cheapest = rows.front().seconds_per_iteration;
    for (const auto& r : rows) cheapest = std::min(cheapest, r.seconds_per_iteration);
    for (auto& r : rows) r.relative = r.seconds_per_iteration / cheapest;

    char buf[128];
    std::snprintf(buf, sizeof buf, "bench: batch %zu, T=%zu, F=%zu, n_qubits=%d, %zu iterations\n", c.bench_batch,
                  c.seq_len, datapipe::kNumFeatures, c.model_config(c.seq_len, 0).n_qubits, c.bench_iterations);
    log << buf;
    std::snprintf(buf, sizeof buf, "%-10s %14s %10s\n", "model", "sec/iter", "relative");
    log << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-10s %14.6f %9.2fx\n", r.model.c_str(), r.seconds_per_iteration, r.relative);
        log << buf;
    }
    return rows;
}

}  // namespace qtcnn::app
