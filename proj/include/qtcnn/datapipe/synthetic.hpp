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
 * Synthetic stock panel with a controllable momentum signal.
 *
 * Each stock k carries a hidden drift m_k(t) following a stationary AR(1)
 * with persistence 0.995 and standard deviation rho * 0.015. Daily log
 * returns are m_k(t) + sigma_k * eps with sigma_k uniform in [0.01, 0.03], so
 * past returns (momentum) predict future returns only when rho > 0.
 *
 * Trading days are weekdays starting at `start`. About 0.2% of stock-days
 * carry an adjustment factor of 0.5 or 2.0 and about 0.1% are flagged for
 * supervision. The raw close path is not altered by adjustment events, so
 * the recorded Target (computed from raw closes) has no split artefacts.
 */

#pragma once

#include <cstddef>
#include <cstdint>

#include "qtcnn/common/date.hpp"
#include "qtcnn/datapipe/panel.hpp"

namespace qtcnn::datapipe {

struct SyntheticConfig {
    std::size_t n_stocks = 50;
    std::size_t n_days = 300;
    double rho = 0.5;
    std::uint64_t seed = 0;
    Date start{2017, 1, 4};
    std::int64_t first_code = 1301;
};

/// Throws ConfigError when rho is outside [0, 1] or a size is zero.
Panel generate_synthetic(const SyntheticConfig& config);

}  // namespace qtcnn::datapipe
