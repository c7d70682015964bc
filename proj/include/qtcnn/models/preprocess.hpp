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
 * Train-split statistics for the tabular quantum models: a standardizer
 * composed with PCA, and a per-feature min-max map onto [0, pi].
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qtcnn::models {

struct PcaModel {
    std::size_t n_features = 0;
    std::size_t n_components = 0;
    std::vector<double> means;
    /// Column standard deviations (population); zero-std columns store 1.
    std::vector<double> stds;
    /// Row-major n_components x n_features; rows are orthonormal and sorted by
    /// descending eigenvalue.
    std::vector<double> components;
    std::vector<double> eigenvalues;
    /// Number of rows the statistics were fitted on; 0 means unfitted.
    std::size_t fit_rows = 0;

    bool fitted() const { return fit_rows > 0; }
    /// W_PCA . standardize(x). Throws StateError when unfitted.
    std::vector<double> transform(std::span<const double> x) const;
    /// standardize(x) only.
    std::vector<double> standardize(std::span<const double> x) const;
};

/// Fits on row-major N x d data. Each component's largest-magnitude entry is
/// made positive. Throws DataError when N <= n_components, ArgumentError when
/// d < n_components or the data is not N x d.
PcaModel fit_pca(std::span<const double> x, std::size_t n_rows, std::size_t n_features,
                 std::size_t n_components);

struct MinMaxMap {
    std::vector<double> mins;
    std::vector<double> maxs;
    std::size_t fit_rows = 0;

    bool fitted() const { return fit_rows > 0; }
    /// pi (x - min) / (max - min), clamped to [0, pi]; constant features map
    /// to pi / 2.
    std::vector<double> apply(std::span<const double> x) const;
};

MinMaxMap fit_minmax(std::span<const double> x, std::size_t n_rows, std::size_t n_features);

}  // namespace qtcnn::models
