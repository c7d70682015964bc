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


#include "qtcnn/backtest/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/rng.hpp"

namespace qtcnn::backtest {

namespace {

constexpr double kZ95 = 1.96;

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> zscore(std::span<const double> values) {
    std::vector<double> z(values.size(), 0.0);
    if (values.size() < 2) return z;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*hi > *lo)) return z;
    const double m = mean_of(values);
    double ss = 0.0;
    for (double x : values) ss += (x - m) * (x - m);
    const double sd = std::sqrt(ss / static_cast<double>(values.size()));
    if (!(sd > 0.0)) return z;
    for (std::size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - m) / sd;
    return z;
}

DayScores standardize_scores(DayScores day) {
    std::vector<double> raw;
    raw.reserve(day.entries.size());
    for (const auto& e : day.entries) raw.push_back(e.score);
    const auto z = zscore(raw);
    for (std::size_t i = 0; i < z.size(); ++i) day.entries[i].score = z[i];
    return day;
}

std::optional<Portfolio> select_portfolio(const DayScores& day, std::size_t k) {
    if (k < 1) throw ArgumentError("portfolio size K must be >= 1");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < day.entries.size(); ++i) {
        const auto& e = day.entries[i];
        if (e.tradable && !std::isnan(e.target)) idx.push_back(i);
    }
    const std::size_t k_day = std::min(k, idx.size() / 2);
    if (k_day == 0) return std::nullopt;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ea = day.entries[a];
        const auto& eb = day.entries[b];
        if (ea.score != eb.score) return ea.score > eb.score;
        return ea.code < eb.code;
    });
    Portfolio p;
    p.date = day.date;
    p.longs.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k_day));
    p.shorts.assign(idx.end() - static_cast<std::ptrdiff_t>(k_day), idx.end());
    return p;
}

double long_short_return(const DayScores& day, const Portfolio& portfolio) {
    if (portfolio.longs.empty() || portfolio.shorts.empty()) throw ArgumentError("empty portfolio leg");
    auto leg = [&](const std::vector<std::size_t>& ix) {
        double s = 0.0;
        for (std::size_t i : ix) s += day.entries.at(i).target;
        return s / static_cast<double>(ix.size());
    };
    return leg(portfolio.longs) - leg(portfolio.shorts);
}

LongShortResult run_long_short(std::vector<DayScores> days, std::size_t k) {
    std::sort(days.begin(), days.end(), [](const DayScores& a, const DayScores& b) { return a.date < b.date; });
    std::vector<std::optional<double>> values(days.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(days.size()); ++d) {
        const DayScores z = standardize_scores(days[static_cast<std::size_t>(d)]);
        if (const auto p = select_portfolio(z, k)) values[static_cast<std::size_t>(d)] = long_short_return(z, *p);
    }
    LongShortResult out;
    for (std::size_t d = 0; d < days.size(); ++d) {
        if (values[d]) {
            out.returns.push_back({days[d].date, *values[d]});
        } else {
            out.skipped.push_back(days[d].date);
        }
    }
    return out;
}

std::optional<double> try_sharpe(std::span<const double> returns) {
    if (returns.size() < 2) throw DataError("Sharpe ratio needs at least 2 returns");
    const auto [lo, hi] = std::minmax_element(returns.begin(), returns.end());
    if (!(*hi > *lo)) return std::nullopt;
    const double m = mean_of(returns);
    double ss = 0.0;
    for (double x : returns) ss += (x - m) * (x - m);
    const double sd = std::sqrt(ss / static_cast<double>(returns.size() - 1));
    if (!(sd > 0.0)) return std::nullopt;
    return std::sqrt(kTradingDays) * m / sd;
}

double sharpe(std::span<const double> returns) {
    const auto sr = try_sharpe(returns);
    if (!sr) throw DegenerateSeriesError();
    return *sr;
}

BootstrapCi bootstrap_ci(std::span<const double> returns, std::size_t b, std::uint64_t seed) {
    const std::size_t n = returns.size();
    if (n < 5) throw DataError("bootstrap needs at least 5 days, got " + std::to_string(n));
    if (b < 100) throw ArgumentError("bootstrap needs B >= 100");
    const double sr = sharpe(returns);
    std::vector<double> srs(b);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(b); ++r) {
        Rng rng = Rng::stream(seed, "bootstrap", static_cast<std::uint64_t>(r));
        std::vector<double> sample(n);
        for (double& x : sample) x = returns[static_cast<std::size_t>(rng.below(n))];
        srs[static_cast<std::size_t>(r)] = try_sharpe(sample).value_or(0.0);
    }
    const double m = mean_of(srs);
    double ss = 0.0;
    for (double x : srs) ss += (x - m) * (x - m);
    BootstrapCi ci;
    ci.se = std::sqrt(ss / static_cast<double>(b - 1));
    ci.ci_low = sr - kZ95 * ci.se;
    ci.ci_high = sr + kZ95 * ci.se;
    return ci;
}

std::vector<DayScores> group_by_date(std::span<const Date> dates, std::span<const std::int64_t> codes,
                                     std::span<const double> scores, std::span<const std::uint8_t> tradable,
                                     std::span<const double> targets) {
    const std::size_t n = dates.size();
    if (codes.size() != n || scores.size() != n || tradable.size() != n || targets.size() != n) {
        throw ArgumentError("score arrays differ in length");
    }
    std::map<Date, DayScores> by_date;
    for (std::size_t i = 0; i < n; ++i) {
        DayScores& d = by_date[dates[i]];
        d.date = dates[i];
        for (const auto& e : d.entries) {
            if (e.code == codes[i]) {
                throw DataError("duplicate score for security " + std::to_string(codes[i]) + " on " +
                                dates[i].iso());
            }
        }
        d.entries.push_back({codes[i], scores[i], tradable[i] != 0, targets[i]});
    }
    std::vector<DayScores> out;
    out.reserve(by_date.size());
    for (auto& [date, day] : by_date) out.push_back(std::move(day));
    return out;
}

}  // namespace qtcnn::backtest
