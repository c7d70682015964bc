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
 * Pipeline stages from a sorted panel to model-ready windows.
 *
 * Feature columns (in order): ret1, mom1, mom2, mom5, mom10, mom20, vol5,
 * vol10, vol20, dv, dv_mean5, dv_mean10, dv_mean20, vol_mean5, vol_mean10,
 * vol_mean20, log_volume, log_dv.
 *
 *   ret1       = adj_t / adj_{t-1} - 1
 *   mom_n      = adj_t / adj_{t-n} - 1
 *   vol_n      = sample std (ddof 1) of ret1 over the last n rows
 *   dv         = close_t * volume_t (raw close)
 *   dv_mean_n  = mean dv over the last n rows
 *   vol_mean_n = mean volume over the last n rows
 *   log_volume = ln(volume + 1), log_dv = ln(dv + 1)
 *
 * "Rows" are a security's consecutive rows in the (possibly subsampled)
 * panel. A value whose window is not full, or touches an absent input, is
 * NaN; such rows are never sampled.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtcnn/datapipe/panel.hpp"
#include "qtcnn/datapipe/sample_set.hpp"

namespace qtcnn::datapipe {

inline constexpr std::size_t kNumFeatures = 18;
/// Rows a security needs before its first complete feature row.
inline constexpr std::size_t kFeatureWarmup = 20;

const std::array<std::string_view, kNumFeatures>& feature_names();

enum FeatureIndex : std::size_t {
    kRet1 = 0, kMom1, kMom2, kMom5, kMom10, kMom20, kVol5, kVol10, kVol20, kDv,
    kDvMean5, kDvMean10, kDvMean20, kVolMean5, kVolMean10, kVolMean20, kLogVolume, kLogDv
};

/// Row-major n_rows x kNumFeatures; row i belongs to panel row i.
struct FeatureTable {
    std::size_t n_rows = 0;
    std::vector<double> values;

    double& at(std::size_t row, std::size_t f) { return values[row * kNumFeatures + f]; }
    double at(std::size_t row, std::size_t f) const { return values[row * kNumFeatures + f]; }
    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values).subspan(i * kNumFeatures, kNumFeatures);
    }
    bool complete(std::size_t i) const;
};

/// adj_close = close * cumulative product of the security's factors up to
/// and including the row's date. Throws StateError on an unsorted panel.
std::vector<double> adjust_close(const Panel& panel);

/// (C(t+2) - C(t+1)) / C(t+1) on raw closes; NaN for each security's last
/// two rows and whenever a close is absent. Needs a sorted panel.
std::vector<double> compute_target(const Panel& panel);

struct TargetCheck {
    std::size_t compared = 0;
    std::size_t mismatched = 0;
    double max_abs_diff = 0.0;
};

/// Compares recomputed targets with the ones the file carried.
TargetCheck check_targets(const Panel& panel, std::span<const double> recomputed, double tol = 1e-6);

FeatureTable compute_features(const Panel& panel, std::span<const double> adj_close);

/// Linear-interpolation percentile of sorted data, q in [0, 1].
double percentile_sorted(std::span<const double> sorted, double q);

struct NormalizeStats {
    std::size_t groups = 0;
    std::size_t skipped_groups = 0;
};

/// Per (date, feature): clamp to [P1, P99], then population z-score over the
/// finite values of the group. A zero spread gives z = 0. Groups with fewer
/// than 3 finite values are set to NaN and counted as skipped.
NormalizeStats winsorize_zscore_daily(FeatureTable& features, std::span<const Date> row_dates);

/// Per date among eligible rows: rank by target descending, ties by
/// ascending code; top p_day get 1, bottom p_day get 0, the rest
/// kUnlabeled. p_day = p, or floor(N/2) when the date has fewer than 2p
/// eligible rows.
std::vector<std::int8_t> make_labels(std::span<const Date> dates, std::span<const std::int64_t> codes,
                                     std::span<const double> targets, std::span<const std::uint8_t> eligible,
                                     std::size_t p);

/// Positions 0, k, 2k, ... of the sorted dates.
std::vector<Date> stride_sample(std::span<const Date> dates, std::size_t k);

/// round(alpha * n_year) dates drawn uniformly without replacement per
/// calendar year; output sorted. alpha == 1 returns the input.
std::vector<Date> year_fraction_sample(std::span<const Date> dates, double alpha, std::uint64_t seed);

struct DateSplit {
    std::vector<Date> train;
    std::vector<Date> test;
};

/// First ceil(0.8 n) dates train, the rest test. Throws DataError if n < 5.
DateSplit temporal_split(std::span<const Date> dates);

/// Per-row inputs for window assembly. Rows are sorted by (code, date);
/// calendar[i] is the position of row i's date in the sampled calendar.
struct SequenceSource {
    std::span<const std::int64_t> codes;
    std::span<const Date> dates;
    std::span<const std::int32_t> calendar;
    const FeatureTable* features = nullptr;
    std::span<const std::int8_t> labels;
    std::span<const double> targets;
    std::span<const std::uint8_t> tradable;
    /// n_rows x kRawColumns raw mom5, mom20, vol20.
    std::span<const double> raw;
};

/// 1 where row i ends seq_len complete feature rows of one security on
/// consecutive calendar positions.
std::vector<std::uint8_t> window_ready(std::span<const std::int64_t> codes, std::span<const std::int32_t> calendar,
                                       const FeatureTable& features, std::size_t seq_len);

/// Emits one window per row r with include(r) true whose security has
/// seq_len complete feature rows on consecutive calendar positions ending at
/// r. Output is ordered by (date, code).
SampleSet build_sequences(const SequenceSource& src, std::size_t seq_len,
                          const std::function<bool(std::size_t)>& include, std::string split);

}  // namespace qtcnn::datapipe
