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
 * Daily long-short evaluation of model scores.
 *
 * Each day the raw scores are z-scored across the day's entries. Among
 * tradable entries with a target, the top K_day by z form the long leg and
 * the bottom K_day the short leg, with K_day = min(K, floor(N / 2)) and ties
 * ordered by ascending code. The day's return is the mean long target minus
 * the mean short target. Days with nothing to trade are skipped.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtcnn/common/date.hpp"

namespace qtcnn::backtest {

inline constexpr double kTradingDays = 252.0;

struct ScoreEntry {
    std::int64_t code = 0;
    double score = 0.0;
    bool tradable = true;
    /// Realized target; NaN when unknown.
    double target = 0.0;
};

struct DayScores {
    Date date;
    std::vector<ScoreEntry> entries;
};

/// Population z-scores; all zero unless at least two distinct values exist.
std::vector<double> zscore(std::span<const double> values);

/// Replaces every score with its z-score over the day.
DayScores standardize_scores(DayScores day);

/// Indices into DayScores::entries.
struct Portfolio {
    Date date;
    std::vector<std::size_t> longs;
    std::vector<std::size_t> shorts;
};

/// Returns nullopt when fewer than two entries are tradable with a target.
std::optional<Portfolio> select_portfolio(const DayScores& day, std::size_t k);

double long_short_return(const DayScores& day, const Portfolio& portfolio);

struct DailyReturn {
    Date date;
    double value = 0.0;

    friend bool operator==(const DailyReturn&, const DailyReturn&) = default;
};

struct LongShortResult {
    std::vector<DailyReturn> returns;
    std::vector<Date> skipped;
};

/// Standardizes, selects and scores every day. Output is date-ordered.
LongShortResult run_long_short(std::vector<DayScores> days, std::size_t k);

/// sqrt(252) * mean / sample std. Throws DataError for fewer than two values
/// and DegenerateSeriesError when the std is zero.
double sharpe(std::span<const double> returns);

/// Same as sharpe() but empty on a degenerate series.
std::optional<double> try_sharpe(std::span<const double> returns);

struct BootstrapCi {
    double ci_low = 0.0;
    double ci_high = 0.0;
    double se = 0.0;
};

/// iid day resampling, B resamples drawn from per-resample streams of
/// `seed`. SE is the sample std of the resampled Sharpe ratios (degenerate
/// resamples count as 0); CI = SR +- 1.96 SE. Needs at least 5 days and
/// B >= 100.
BootstrapCi bootstrap_ci(std::span<const double> returns, std::size_t b, std::uint64_t seed);

/// Groups per-sample scores by date, keeping input order within a day.
std::vector<DayScores> group_by_date(std::span<const Date> dates, std::span<const std::int64_t> codes,
                                     std::span<const double> scores, std::span<const std::uint8_t> tradable,
                                     std::span<const double> targets);

}  // namespace qtcnn::backtest
