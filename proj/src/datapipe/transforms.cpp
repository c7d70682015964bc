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


#include "qtcnn/datapipe/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/rng.hpp"

namespace qtcnn::datapipe {

namespace {

constexpr std::array<std::string_view, kNumFeatures> kFeatureNames{
    "ret1",     "mom1",      "mom2",      "mom5",      "mom10",      "mom20",
    "vol5",     "vol10",     "vol20",     "dv",        "dv_mean5",   "dv_mean10",
    "dv_mean20", "vol_mean5", "vol_mean10", "vol_mean20", "log_volume", "log_dv"};

constexpr double kWinsorLow = 0.01;
constexpr double kWinsorHigh = 0.99;
constexpr std::size_t kMinGroup = 3;

// [begin, end) row ranges of each security in a (code, date)-sorted panel.
std::vector<std::pair<std::size_t, std::size_t>> segments(const Panel& panel) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= panel.rows.size(); ++i) {
        if (i == panel.rows.size() || panel.rows[i].code != panel.rows[begin].code) {
            out.emplace_back(begin, i);
            begin = i;
        }
    }
    if (panel.rows.empty()) out.clear();
    return out;
}

void require_sorted(const Panel& panel) {
    if (!panel.is_sorted()) throw StateError("panel must be sorted by (code, date)");
}

// Mean of v[j-n+1 .. j]; NaN if the window is short or has an absent value.
double window_mean(const std::vector<double>& v, std::size_t j, std::size_t n) {
    if (j + 1 < n) return kAbsent;
    double s = 0.0;
    for (std::size_t i = j + 1 - n; i <= j; ++i) {
        if (!present(v[i])) return kAbsent;
        s += v[i];
    }
    return s / static_cast<double>(n);
}

double window_sample_std(const std::vector<double>& v, std::size_t j, std::size_t n) {
    const double mean = window_mean(v, j, n);
    if (!present(mean) || n < 2) return kAbsent;
    double ss = 0.0;
    for (std::size_t i = j + 1 - n; i <= j; ++i) ss += (v[i] - mean) * (v[i] - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

const std::array<std::string_view, kNumFeatures>& feature_names() { return kFeatureNames; }

bool FeatureTable::complete(std::size_t i) const {
    for (double v : row(i)) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::vector<double> adjust_close(const Panel& panel) {
    require_sorted(panel);
    std::vector<double> adj(panel.rows.size(), kAbsent);
    for (auto [b, e] : segments(panel)) {
        double cum = 1.0;
        for (std::size_t i = b; i < e; ++i) {
            cum *= panel.rows[i].adjustment_factor;
            adj[i] = panel.rows[i].close * cum;
        }
    }
    return adj;
}

std::vector<double> compute_target(const Panel& panel) {
    require_sorted(panel);
    std::vector<double> target(panel.rows.size(), kAbsent);
    for (auto [b, e] : segments(panel)) {
        for (std::size_t i = b; i + 2 < e; ++i) {
            const double c1 = panel.rows[i + 1].close;
            const double c2 = panel.rows[i + 2].close;
            if (present(c1) && present(c2) && c1 > 0.0) target[i] = (c2 - c1) / c1;
        }
    }
    return target;
}

TargetCheck check_targets(const Panel& panel, std::span<const double> recomputed, double tol) {
    if (recomputed.size() != panel.rows.size()) throw ArgumentError("target vector does not match the panel");
    TargetCheck check;
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        const double given = panel.rows[i].target;
        if (!present(given) || !present(recomputed[i])) continue;
        const double d = std::abs(given - recomputed[i]);
        ++check.compared;
        check.max_abs_diff = std::max(check.max_abs_diff, d);
        if (d > tol) ++check.mismatched;
    }
    return check;
}

FeatureTable compute_features(const Panel& panel, std::span<const double> adj_close) {
    require_sorted(panel);
    if (adj_close.size() != panel.rows.size()) throw ArgumentError("adj_close does not match the panel");
    FeatureTable ft;
    ft.n_rows = panel.rows.size();
    ft.values.assign(ft.n_rows * kNumFeatures, kAbsent);
    const auto segs = segments(panel);

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(segs.size()); ++s) {
        const auto [b, e] = segs[static_cast<std::size_t>(s)];
        const std::size_t n = e - b;
        std::vector<double> adj(adj_close.begin() + static_cast<std::ptrdiff_t>(b),
                                adj_close.begin() + static_cast<std::ptrdiff_t>(e));
        std::vector<double> ret(n, kAbsent), dv(n, kAbsent), vol(n, kAbsent);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& r = panel.rows[b + j];
            if (j > 0 && present(adj[j]) && present(adj[j - 1])) ret[j] = adj[j] / adj[j - 1] - 1.0;
            vol[j] = r.volume;
            if (present(r.close) && present(r.volume)) dv[j] = r.close * r.volume;
        }
        auto mom = [&](std::size_t j, std::size_t k) {
            return j >= k && present(adj[j]) && present(adj[j - k]) ? adj[j] / adj[j - k] - 1.0 : kAbsent;
        };
        for (std::size_t j = 0; j < n; ++j) {
            double* f = &ft.values[(b + j) * kNumFeatures];
            f[kRet1] = ret[j];
            f[kMom1] = mom(j, 1);
            f[kMom2] = mom(j, 2);
            f[kMom5] = mom(j, 5);
            f[kMom10] = mom(j, 10);
            f[kMom20] = mom(j, 20);
            f[kVol5] = window_sample_std(ret, j, 5);
            f[kVol10] = window_sample_std(ret, j, 10);
            f[kVol20] = window_sample_std(ret, j, 20);
            f[kDv] = dv[j];
            f[kDvMean5] = window_mean(dv, j, 5);
            f[kDvMean10] = window_mean(dv, j, 10);
            f[kDvMean20] = window_mean(dv, j, 20);
            f[kVolMean5] = window_mean(vol, j, 5);
            f[kVolMean10] = window_mean(vol, j, 10);
            f[kVolMean20] = window_mean(vol, j, 20);
            f[kLogVolume] = present(vol[j]) ? std::log(vol[j] + 1.0) : kAbsent;
            f[kLogDv] = present(dv[j]) ? std::log(dv[j] + 1.0) : kAbsent;
        }
    }
    return ft;
}

double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ArgumentError("percentile of an empty group");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

NormalizeStats winsorize_zscore_daily(FeatureTable& features, std::span<const Date> row_dates) {
    if (row_dates.size() != features.n_rows) throw ArgumentError("row dates do not match the feature table");
    std::map<Date, std::vector<std::size_t>> by_date;
    for (std::size_t i = 0; i < row_dates.size(); ++i) by_date[row_dates[i]].push_back(i);

    std::vector<std::vector<std::size_t>> groups;
    groups.reserve(by_date.size());
    for (auto& [d, rows] : by_date) groups.push_back(std::move(rows));

    NormalizeStats stats;
    stats.groups = groups.size() * kNumFeatures;
    std::size_t skipped = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : skipped)
    for (std::ptrdiff_t g = 0; g < static_cast<std::ptrdiff_t>(groups.size()); ++g) {
        const auto& rows = groups[static_cast<std::size_t>(g)];
        std::vector<std::size_t> idx;
        std::vector<double> sorted;
        for (std::size_t f = 0; f < kNumFeatures; ++f) {
            idx.clear();
            sorted.clear();
            for (std::size_t r : rows) {
                if (std::isfinite(features.at(r, f))) {
                    idx.push_back(r);
                    sorted.push_back(features.at(r, f));
                }
            }
            if (idx.size() < kMinGroup) {
                for (std::size_t r : idx) features.at(r, f) = kAbsent;
                ++skipped;
                continue;
            }
            std::sort(sorted.begin(), sorted.end());
            const double lo = percentile_sorted(sorted, kWinsorLow);
            const double hi = percentile_sorted(sorted, kWinsorHigh);
            double mean = 0.0;
            for (std::size_t r : idx) {
                double& v = features.at(r, f);
                v = std::clamp(v, lo, hi);
                mean += v;
            }
            mean /= static_cast<double>(idx.size());
            double ss = 0.0;
            for (std::size_t r : idx) ss += (features.at(r, f) - mean) * (features.at(r, f) - mean);
            const double sd = std::sqrt(ss / static_cast<double>(idx.size()));
            // lo == hi means every clamped value is identical.
            const bool flat = !(hi > lo) || !(sd > 0.0);
            for (std::size_t r : idx) features.at(r, f) = flat ? 0.0 : (features.at(r, f) - mean) / sd;
        }
    }
    stats.skipped_groups = skipped;
    return stats;
}

std::vector<std::int8_t> make_labels(std::span<const Date> dates, std::span<const std::int64_t> codes,
                                     std::span<const double> targets, std::span<const std::uint8_t> eligible,
                                     std::size_t p) {
    const std::size_t n = dates.size();
    if (codes.size() != n || targets.size() != n || eligible.size() != n) {
        throw ArgumentError("make_labels inputs differ in length");
    }
    if (p < 1) throw ArgumentError("make_labels needs p >= 1");
    std::vector<std::int8_t> labels(n, kUnlabeled);
    std::map<Date, std::vector<std::size_t>> by_date;
    for (std::size_t i = 0; i < n; ++i) {
        if (eligible[i] && present(targets[i])) by_date[dates[i]].push_back(i);
    }
    for (auto& [d, rows] : by_date) {
        std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
            if (targets[a] != targets[b]) return targets[a] > targets[b];
            return codes[a] < codes[b];
        });
        const std::size_t N = rows.size();
        const std::size_t p_day = N >= 2 * p ? p : N / 2;
        for (std::size_t r = 0; r < p_day; ++r) {
            labels[rows[r]] = 1;
            labels[rows[N - 1 - r]] = 0;
        }
    }
    return labels;
}

std::vector<Date> stride_sample(std::span<const Date> dates, std::size_t k) {
    if (k < 1) throw ArgumentError("stride must be >= 1");
    std::vector<Date> out;
    for (std::size_t i = 0; i < dates.size(); i += k) out.push_back(dates[i]);
    return out;
}

std::vector<Date> year_fraction_sample(std::span<const Date> dates, double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("fraction must lie in (0, 1]");
    if (alpha == 1.0) return std::vector<Date>(dates.begin(), dates.end());
    std::map<int, std::vector<Date>> by_year;
    for (Date d : dates) by_year[d.year()].push_back(d);
    std::vector<Date> out;
    for (auto& [year, ds] : by_year) {
        const auto keep = static_cast<std::size_t>(std::llround(alpha * static_cast<double>(ds.size())));
        Rng rng = Rng::stream(seed, "year_fraction", static_cast<std::uint64_t>(year));
        // Partial Fisher-Yates: the first `keep` slots are a uniform subset.
        for (std::size_t i = 0; i < keep; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(ds.size() - i));
            std::swap(ds[i], ds[j]);
        }
        out.insert(out.end(), ds.begin(), ds.begin() + static_cast<std::ptrdiff_t>(keep));
    }
    std::sort(out.begin(), out.end());
    return out;
}

DateSplit temporal_split(std::span<const Date> dates) {
    const std::size_t n = dates.size();
    if (n < 5) throw DataError("temporal split needs at least 5 dates, got " + std::to_string(n));
    const std::size_t n_train = (4 * n + 4) / 5;
    DateSplit s;
    s.train.assign(dates.begin(), dates.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.assign(dates.begin() + static_cast<std::ptrdiff_t>(n_train), dates.end());
    return s;
}

std::vector<std::uint8_t> window_ready(std::span<const std::int64_t> codes, std::span<const std::int32_t> calendar,
                                       const FeatureTable& features, std::size_t seq_len) {
    const std::size_t n = codes.size();
    if (calendar.size() != n || features.n_rows != n) throw ArgumentError("window inputs differ in length");
    std::vector<std::uint8_t> ready(n, 0);
    std::size_t run = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool continues = i > 0 && codes[i] == codes[i - 1] && calendar[i] == calendar[i - 1] + 1;
        run = !features.complete(i) ? 0 : (continues ? run + 1 : 1);
        ready[i] = run >= seq_len ? 1 : 0;
    }
    return ready;
}

SampleSet build_sequences(const SequenceSource& src, std::size_t seq_len,
                          const std::function<bool(std::size_t)>& include, std::string split) {
    if (seq_len < 1) throw ArgumentError("seq_len must be >= 1");
    const std::size_t n = src.codes.size();
    if (!src.features || src.features->n_rows != n || src.dates.size() != n || src.calendar.size() != n ||
        src.labels.size() != n || src.targets.size() != n || src.tradable.size() != n ||
        src.raw.size() != n * kRawColumns) {
        throw ArgumentError("sequence source arrays differ in length");
    }
    const FeatureTable& ft = *src.features;

    const auto ready = window_ready(src.codes, src.calendar, ft, seq_len);
    std::vector<std::size_t> ends;
    for (std::size_t i = 0; i < n; ++i) {
        if (ready[i] && include(i)) ends.push_back(i);
    }
    std::sort(ends.begin(), ends.end(), [&](std::size_t a, std::size_t b) {
        return src.dates[a] != src.dates[b] ? src.dates[a] < src.dates[b] : src.codes[a] < src.codes[b];
    });

    SampleSet set;
    set.split = std::move(split);
    set.seq_len = seq_len;
    set.n_features = kNumFeatures;
    for (auto name : feature_names()) set.feature_names.emplace_back(name);
    set.sequences.reserve(ends.size() * seq_len * kNumFeatures);
    for (std::size_t e : ends) {
        for (std::size_t r = e + 1 - seq_len; r <= e; ++r) {
            const auto row = ft.row(r);
            set.sequences.insert(set.sequences.end(), row.begin(), row.end());
        }
        set.labels.push_back(src.labels[e]);
        set.keys.push_back({src.dates[e], src.codes[e]});
        set.targets.push_back(src.targets[e]);
        set.tradable.push_back(src.tradable[e]);
        for (std::size_t c = 0; c < kRawColumns; ++c) set.raw_last.push_back(src.raw[e * kRawColumns + c]);
    }
    return set;
}

}  // namespace qtcnn::datapipe
