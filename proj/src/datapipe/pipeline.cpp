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


#include "qtcnn/datapipe/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::datapipe {

namespace {

std::string stage_error(const std::string& stage, const std::exception& e) { return stage + ": " + e.what(); }

std::vector<Date> sample_dates(const std::vector<Date>& all, const PipelineConfig& config) {
    switch (config.sampling) {
        case SamplingMode::None: return all;
        case SamplingMode::Stride: return stride_sample(all, config.stride);
        case SamplingMode::Fraction: return year_fraction_sample(all, config.fraction, config.seed);
    }
    return all;
}

bool tradable_row(const PanelRow& r) {
    return present(r.close) && r.close > 0.0 && present(r.volume) && r.volume > 0.0 && !r.supervision_flag;
}

}  // namespace

Panel restrict_dates(const Panel& panel, const std::vector<Date>& dates) {
    Panel out;
    out.rows.reserve(panel.rows.size());
    double carry = 1.0;
    for (std::size_t i = 0; i < panel.rows.size(); ++i) {
        const PanelRow& r = panel.rows[i];
        if (i == 0 || r.code != panel.rows[i - 1].code) carry = 1.0;
        if (std::binary_search(dates.begin(), dates.end(), r.date)) {
            PanelRow kept = r;
            kept.adjustment_factor = carry * r.adjustment_factor;
            carry = 1.0;
            out.rows.push_back(kept);
        } else {
            carry *= r.adjustment_factor;
        }
    }
    return out;
}

PipelineResult run_pipeline(Panel panel, const PipelineConfig& config) {
    if (config.p < 1) throw ConfigError("p must be >= 1");
    if (config.seq_len < 1) throw ConfigError("seq_len must be >= 1");
    PipelineResult result;
    PipelineStats& st = result.stats;
    if (!panel.is_sorted()) panel.sort_canonical();

    // Target.
    {
        const auto target = compute_target(panel);
        st.target_check = check_targets(panel, target);
        for (std::size_t i = 0; i < panel.rows.size(); ++i) {
            if (!present(panel.rows[i].target) && present(target[i])) {
                panel.rows[i].target = target[i];
                ++st.targets_filled;
            }
        }
        st.log.push_back("target: compared " + std::to_string(st.target_check.compared) + ", mismatched " +
                         std::to_string(st.target_check.mismatched) + ", filled " +
                         std::to_string(st.targets_filled));
    }

    // Sampling.
    const std::vector<Date> all_dates = panel.dates();
    std::vector<Date> kept;
    try {
        kept = sample_dates(all_dates, config);
    } catch (const std::exception& e) {
        throw DataError(stage_error("sampling", e));
    }
    st.panel_days = all_dates.size();
    st.kept_days = kept.size();
    if (kept.size() != all_dates.size()) panel = restrict_dates(panel, kept);
    st.log.push_back("sampling: kept " + std::to_string(kept.size()) + " of " + std::to_string(all_dates.size()) +
                     " days");

    const std::size_t n = panel.rows.size();
    std::vector<std::int64_t> codes(n);
    std::vector<Date> dates(n);
    std::vector<std::int32_t> calendar(n);
    std::vector<double> targets(n);
    std::vector<std::uint8_t> tradable(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PanelRow& r = panel.rows[i];
        codes[i] = r.code;
        dates[i] = r.date;
        calendar[i] = static_cast<std::int32_t>(std::lower_bound(kept.begin(), kept.end(), r.date) - kept.begin());
        targets[i] = r.target;
        tradable[i] = tradable_row(r) ? 1 : 0;
    }

    // Features.
    const auto adj = adjust_close(panel);
    FeatureTable features = compute_features(panel, adj);
    std::vector<double> raw(n * kRawColumns);
    for (std::size_t i = 0; i < n; ++i) {
        raw[i * kRawColumns + 0] = features.at(i, kMom5);
        raw[i * kRawColumns + 1] = features.at(i, kMom20);
        raw[i * kRawColumns + 2] = features.at(i, kVol20);
    }

    // Normalization.
    st.normalize = winsorize_zscore_daily(features, dates);
    st.log.push_back("normalize: " + std::to_string(st.normalize.groups) + " groups, " +
                     std::to_string(st.normalize.skipped_groups) + " skipped (fewer than 3 values)");

    // Labels over rows that can become samples.
    const auto ready = window_ready(codes, calendar, features, config.seq_len);
    std::vector<std::uint8_t> eligible(n);
    for (std::size_t i = 0; i < n; ++i) eligible[i] = ready[i] && present(targets[i]) ? 1 : 0;
    const auto labels = make_labels(dates, codes, targets, eligible, config.p);
    st.labeled_rows = static_cast<std::size_t>(
        std::count_if(labels.begin(), labels.end(), [](std::int8_t l) { return l != kUnlabeled; }));

    // Split.
    DateSplit split;
    try {
        split = temporal_split(kept);
    } catch (const std::exception& e) {
        throw DataError(stage_error("split", e));
    }
    st.train_days = split.train.size();
    st.test_days = split.test.size();
    const Date first_test = split.test.front();

    SequenceSource src{codes, dates, calendar, &features, labels, targets, tradable, raw};
    result.train = build_sequences(
        src, config.seq_len, [&](std::size_t i) { return dates[i] < first_test && labels[i] != kUnlabeled; },
        "train");
    result.test = build_sequences(src, config.seq_len, [&](std::size_t i) { return dates[i] >= first_test; }, "test");
    st.train_samples = result.train.size();
    st.test_samples = result.test.size();
    st.log.push_back("split: " + std::to_string(st.train_days) + " train days, " + std::to_string(st.test_days) +
                     " test days");
    st.log.push_back("samples: " + std::to_string(st.train_samples) + " train (labeled), " +
                     std::to_string(st.test_samples) + " test");
    if (result.train.size() == 0) throw DataError("sequences: no labeled training windows");
    if (result.test.size() == 0) throw DataError("sequences: no test windows");
    return result;
}

}  // namespace qtcnn::datapipe
