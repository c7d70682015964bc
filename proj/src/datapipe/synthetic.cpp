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


#include "qtcnn/datapipe/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/rng.hpp"

namespace qtcnn::datapipe {

namespace {

constexpr double kPersistence = 0.995;
constexpr double kDriftScale = 0.015;
constexpr double kAdjustmentRate = 0.002;
constexpr double kSupervisionRate = 0.001;

bool is_weekday(Date d) {
    const int dow = static_cast<int>(((d.days() + 4) % 7 + 7) % 7);  // 0 = Sunday
    return dow != 0 && dow != 6;
}

double round_tick(double price) { return std::max(0.1, std::round(price * 10.0) / 10.0); }

}  // namespace

Panel generate_synthetic(const SyntheticConfig& config) {
    if (!(config.rho >= 0.0 && config.rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
    if (config.n_stocks == 0 || config.n_days == 0) throw ConfigError("synthetic panel needs stocks and days");

    std::vector<Date> calendar;
    for (Date d = config.start; calendar.size() < config.n_days; d = d.plus_days(1)) {
        if (is_weekday(d)) calendar.push_back(d);
    }

    const double drift_sd = config.rho * kDriftScale;
    const double innovation_sd = drift_sd * std::sqrt(1.0 - kPersistence * kPersistence);

    Panel panel;
    panel.rows.reserve(config.n_stocks * config.n_days);
    for (std::size_t k = 0; k < config.n_stocks; ++k) {
        Rng rng = Rng::stream(config.seed, "synthetic.stock", k);
        const double sigma = rng.uniform(0.01, 0.03);
        const double log_base_volume = rng.normal(11.0, 1.0);
        double drift = rng.normal(0.0, drift_sd);
        double close = round_tick(rng.uniform(500.0, 5000.0));

        const std::size_t first = panel.rows.size();
        for (std::size_t t = 0; t < config.n_days; ++t) {
            PanelRow r;
            r.date = calendar[t];
            r.code = config.first_code + static_cast<std::int64_t>(k);
            const double prev = close;
            if (t > 0) {
                close = round_tick(prev * std::exp(drift + sigma * rng.normal()));
                drift = kPersistence * drift + innovation_sd * rng.normal();
            }
            const double open = round_tick(prev * std::exp(0.3 * sigma * rng.normal()));
            r.open = open;
            r.close = close;
            r.high = round_tick(std::max(open, close) * std::exp(0.3 * sigma * std::abs(rng.normal())));
            r.low = round_tick(std::min(open, close) * std::exp(-0.3 * sigma * std::abs(rng.normal())));
            r.low = std::min({r.low, open, close});
            r.high = std::max({r.high, open, close});
            r.volume = std::round(std::exp(log_base_volume + 0.3 * rng.normal()));
            if (rng.uniform() < kAdjustmentRate) r.adjustment_factor = rng.uniform() < 0.5 ? 0.5 : 2.0;
            r.supervision_flag = rng.uniform() < kSupervisionRate;
            panel.rows.push_back(r);
        }
        for (std::size_t t = 0; t + 2 < config.n_days; ++t) {
            const double c1 = panel.rows[first + t + 1].close;
            const double c2 = panel.rows[first + t + 2].close;
            panel.rows[first + t].target = (c2 - c1) / c1;
        }
    }
    return panel;
}

}  // namespace qtcnn::datapipe
