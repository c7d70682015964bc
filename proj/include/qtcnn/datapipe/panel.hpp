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


#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <vector>

#include "qtcnn/common/date.hpp"

namespace qtcnn::datapipe {

inline constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

inline bool present(double v) { return !std::isnan(v); }

/// One stock-day. Absent numeric fields hold NaN.
struct PanelRow {
    Date date;
    std::int64_t code = 0;
    double open = kAbsent;
    double high = kAbsent;
    double low = kAbsent;
    double close = kAbsent;
    double volume = kAbsent;
    double adjustment_factor = 1.0;
    bool supervision_flag = false;
    double target = kAbsent;
};

/// Long-format stock-day table, sorted by (code, date) once loaded.
struct Panel {
    std::vector<PanelRow> rows;

    /// Sorts by (code, date); throws DataError on a duplicate key.
    void sort_canonical();
    bool is_sorted() const;
    /// Distinct dates, ascending.
    std::vector<Date> dates() const;
};

/// Reads the stock-price CSV. Columns are located by header name; every
/// problem is reported as an IngestionError carrying the file, line and
/// column. When `stock_list` is given, only codes with Universe0 == True are
/// kept.
Panel load_panel(const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& stock_list = std::nullopt);

/// Writes the same schema load_panel reads. Doubles use the shortest
/// round-trip form, so equal panels give identical bytes.
void write_panel_csv(const Panel& panel, const std::filesystem::path& path);

}  // namespace qtcnn::datapipe
