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
 * Backtest report file.
 *
 *     model=qtcnn
 *     k=10
 *     seed=7
 *     n_days=12
 *     sharpe=1.25
 *     ci_low=-0.5
 *     ci_high=3
 *     config_fingerprint=9f2c...
 *     date,return
 *     2018-02-01,0.0123
 *
 * Reals use the shortest round-trip decimal form, so reading a written
 * report gives back the same values and rewriting it gives the same bytes.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qtcnn/backtest/backtest.hpp"

namespace qtcnn::backtest {

struct Report {
    std::string model;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::size_t n_days = 0;
    double sharpe = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::string config_fingerprint;
    std::vector<DailyReturn> returns;

    friend bool operator==(const Report&, const Report&) = default;
};

/// 64-bit FNV-1a over "key=value\n" lines in the given order, as 16 hex digits.
std::string fingerprint(const std::vector<std::pair<std::string, std::string>>& entries);

std::string format_report(const Report& report);
Report parse_report(const std::string& text);

/// Throws IoError when the file cannot be written.
void write_report(const Report& report, const std::filesystem::path& path);
Report read_report(const std::filesystem::path& path);

}  // namespace qtcnn::backtest
