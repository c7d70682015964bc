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

#include <cmath>
#include <cstdint>
#include <vector>

#include "qtcnn/qsim/kernels.hpp"

namespace qtcnn::qsim::parallel {

namespace {

// Index of the k-th basis state whose bit `wire` is zero.
inline std::size_t insert_zero(std::size_t k, int wire) {
    const std::size_t low = k & ((std::size_t{1} << wire) - 1);
    return ((k >> wire) << (wire + 1)) | low;
}

// Reduction block size. Fixed so partial sums never depend on thread count.
constexpr std::size_t kBlock = 1024;

template <class F>
double blocked_sum(std::size_t n, F&& term) {
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(n_blocks, 0.0);
    const auto nb = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(static) if (n_blocks > 1)
    for (std::int64_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace

void apply_ry(std::span<Complex> amps, int wire, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t stride = std::size_t{1} << wire;
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    Complex* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(static_cast<std::size_t>(k), wire);
        const std::size_t i1 = i0 + stride;
        const Complex a0 = a[i0];
        const Complex a1 = a[i1];
        a[i0] = c * a0 - s * a1;
        a[i1] = s * a0 + c * a1;
    }
}

void apply_rz(std::span<Complex> amps, int wire, double theta) {
    const Complex phase0 = std::polar(1.0, -theta / 2.0);
    const Complex phase1 = std::polar(1.0, theta / 2.0);
    const std::size_t mask = std::size_t{1} << wire;
    const auto n = static_cast<std::int64_t>(amps.size());
    Complex* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        a[i] *= (static_cast<std::size_t>(i) & mask) ? phase1 : phase0;
    }
}

void apply_cnot(std::span<Complex> amps, int control, int target) {
    const int lo = std::min(control, target);
    const int hi = std::max(control, target);
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
    Complex* a = amps.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < quarter; ++k) {
        const std::size_t base = insert_zero(insert_zero(static_cast<std::size_t>(k), lo), hi);
        const std::size_t i = base | cmask;
        std::swap(a[i], a[i | tmask]);
    }
}

double expect_z(std::span<const Complex> amps, int wire) {
    const std::size_t mask = std::size_t{1} << wire;
    const Complex* a = amps.data();
    return blocked_sum(amps.size(), [=](std::size_t i) {
        const double p = std::norm(a[i]);
        return (i & mask) ? -p : p;
    });
}

double norm_squared(std::span<const Complex> amps) {
    const Complex* a = amps.data();
    return blocked_sum(amps.size(), [=](std::size_t i) { return std::norm(a[i]); });
}

}  // namespace qtcnn::qsim::parallel
