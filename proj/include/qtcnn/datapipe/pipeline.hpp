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
 * Panel to train/test SampleSets.
 *
 * Stages in order: target on the full panel, date sampling, adjusted close,
 * features, daily normalization, weak labels, temporal split and windows.
 * Targets are taken before sampling because they describe the next two real
 * trading days, not the next two kept dates. When a date is dropped, its
 * adjustment factors are folded into the security's next kept row so the
 * cumulative product is unchanged.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtcnn/datapipe/panel.hpp"
#include "qtcnn/datapipe/sample_set.hpp"
#include "qtcnn/datapipe/transforms.hpp"

namespace qtcnn::datapipe {

enum class SamplingMode { None, Stride, Fraction };

struct PipelineConfig {
    SamplingMode sampling = SamplingMode::None;
    std::size_t stride = 1;
    double fraction = 1.0;
    std::uint64_t seed = 0;
    std::size_t p = 200;
    std::size_t seq_len = 20;
};

struct PipelineStats {
    std::size_t panel_days = 0;
    std::size_t kept_days = 0;
    std::size_t train_days = 0;
    std::size_t test_days = 0;
    std::size_t train_samples = 0;
    std::size_t test_samples = 0;
    std::size_t labeled_rows = 0;
    std::size_t targets_filled = 0;
    TargetCheck target_check;
    NormalizeStats normalize;
    /// Human-readable stage records, in stage order.
    std::vector<std::string> log;
};

struct PipelineResult {
    SampleSet train;
    SampleSet test;
    PipelineStats stats;
};

/// Keeps `dates` only; factors of dropped rows move to the next kept row of
/// the same security. Rows after a security's last kept date are dropped
/// with their factors.
Panel restrict_dates(const Panel& panel, const std::vector<Date>& dates);

/// Pure function of (panel, config). Throws DataError naming the stage.
PipelineResult run_pipeline(Panel panel, const PipelineConfig& config);

}  // namespace qtcnn::datapipe
