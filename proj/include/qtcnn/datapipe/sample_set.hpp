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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qtcnn/common/date.hpp"

namespace qtcnn::datapipe {

struct SampleKey {
    Date date;
    std::int64_t code = 0;

    friend auto operator<=>(const SampleKey&, const SampleKey&) = default;
};

/// Label value for rows kept for scoring but outside the labeled extremes.
inline constexpr std::int8_t kUnlabeled = -1;

/// Raw (un-normalized) columns carried per sample for the momentum baseline.
inline constexpr std::size_t kRawColumns = 3;  // mom5, mom20, vol20

/// Model-ready windows. Sample i owns the row-major T x F block
/// sequences[i*T*F, (i+1)*T*F); its flat view is the window's last row.
struct SampleSet {
    std::string split;
    std::size_t seq_len = 0;
    std::size_t n_features = 0;
    std::vector<std::string> feature_names;

    std::vector<double> sequences;
    std::vector<std::int8_t> labels;
    std::vector<SampleKey> keys;
    /// Target return of the row, NaN when absent.
    std::vector<double> targets;
    std::vector<std::uint8_t> tradable;
    std::vector<double> raw_last;

    std::size_t size() const { return keys.size(); }
    std::size_t window_size() const { return seq_len * n_features; }

    std::span<const double> window(std::size_t i) const {
        return std::span<const double>(sequences).subspan(i * window_size(), window_size());
    }
    std::span<const double> flat(std::size_t i) const {
        return std::span<const double>(sequences).subspan(i * window_size() + (seq_len - 1) * n_features,
                                                          n_features);
    }
    std::span<const double> raw(std::size_t i) const {
        return std::span<const double>(raw_last).subspan(i * kRawColumns, kRawColumns);
    }

    /// Indices with label 0 or 1, in storage order.
    std::vector<std::size_t> labeled_indices() const;
    /// Copy restricted to `indices`, in the given order.
    SampleSet subset(std::span<const std::size_t> indices) const;

    /// Checks array lengths against size(); throws DataError.
    void validate() const;
};

void write_sample_set(const SampleSet& set, const std::filesystem::path& path);
SampleSet read_sample_set(const std::filesystem::path& path);

}  // namespace qtcnn::datapipe
