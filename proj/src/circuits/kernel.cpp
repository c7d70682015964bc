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

#include "qtcnn/circuits/kernel.hpp"

#include <cstdint>
#include <fstream>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/format.hpp"
#include "qtcnn/qsim/state_vector.hpp"

namespace qtcnn::circuits {

GramMatrix kernel_gram(std::span<const double> x, std::size_t m, int n_qubits) {
    if (m == 0) throw ArgumentError("kernel_gram needs at least one row");
    const auto n = static_cast<std::size_t>(n_qubits);
    if (x.size() != m * n) throw ArgumentError("kernel_gram input is not m x n_qubits");

    GramMatrix g{m, std::vector<double>(m * m, 0.0)};
    const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        g.values[i * m + i] = 1.0;
        const auto xi = x.subspan(i * n, n);
        for (std::size_t j = i + 1; j < m; ++j) {
            const double k = qsim::fidelity(xi, x.subspan(j * n, n), n_qubits);
            g.values[i * m + j] = k;
            g.values[j * m + i] = k;
        }
    }
    return g;
}

void write_gram_csv(const GramMatrix& gram, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    for (std::size_t i = 0; i < gram.size; ++i) {
        for (std::size_t j = 0; j < gram.size; ++j) {
            if (j) out << ',';
            out << format_double(gram(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qtcnn::circuits
