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

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace qtcnn::circuits {

/// Dense row-major square matrix.
struct GramMatrix {
    std::size_t size = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

/// Fidelity-kernel Gram matrix of the rows of `x` (m rows of `n_qubits`
/// angles, row-major). Rows are processed in parallel; each entry is computed
/// once and mirrored.
GramMatrix kernel_gram(std::span<const double> x, std::size_t m, int n_qubits);

/// Writes the matrix as headerless CSV for an external SVM solver.
void write_gram_csv(const GramMatrix& gram, const std::filesystem::path& path);

}  // namespace qtcnn::circuits
