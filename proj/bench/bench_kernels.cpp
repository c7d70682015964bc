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


// Serial reference kernels against their OpenMP counterparts on one layer of
// single-qubit rotations and a CNOT chain, across register sizes.

#include <benchmark/benchmark.h>

#include <vector>

#include "qtcnn/qsim/kernels.hpp"

namespace {

using qtcnn::qsim::Complex;

std::vector<Complex> make_state(int n) {
    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    amps[0] = 1.0;
    return amps;
}

template <typename Ns>
void layer(std::span<Complex> amps, int n) {
    for (int w = 0; w < n; ++w) {
        Ns::apply_ry(amps, w, 0.3 + w);
        Ns::apply_rz(amps, w, 0.1 * w);
    }
    for (int w = 0; w + 1 < n; ++w) Ns::apply_cnot(amps, w, w + 1);
    benchmark::DoNotOptimize(Ns::expect_z(amps, 0));
}

struct Reference {
    static void apply_ry(std::span<Complex> a, int w, double t) { qtcnn::qsim::reference::apply_ry(a, w, t); }
    static void apply_rz(std::span<Complex> a, int w, double t) { qtcnn::qsim::reference::apply_rz(a, w, t); }
    static void apply_cnot(std::span<Complex> a, int c, int t) { qtcnn::qsim::reference::apply_cnot(a, c, t); }
    static double expect_z(std::span<const Complex> a, int w) { return qtcnn::qsim::reference::expect_z(a, w); }
};

struct Parallel {
    static void apply_ry(std::span<Complex> a, int w, double t) { qtcnn::qsim::parallel::apply_ry(a, w, t); }
    static void apply_rz(std::span<Complex> a, int w, double t) { qtcnn::qsim::parallel::apply_rz(a, w, t); }
    static void apply_cnot(std::span<Complex> a, int c, int t) { qtcnn::qsim::parallel::apply_cnot(a, c, t); }
    static double expect_z(std::span<const Complex> a, int w) { return qtcnn::qsim::parallel::expect_z(a, w); }
};

template <typename Ns>
void BM_Layer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto amps = make_state(n);
    for (auto _ : state) layer<Ns>(amps, n);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

}  // namespace

BENCHMARK(BM_Layer<Reference>)->DenseRange(8, 14, 2);
BENCHMARK(BM_Layer<Parallel>)->DenseRange(8, 14, 2);

BENCHMARK_MAIN();
