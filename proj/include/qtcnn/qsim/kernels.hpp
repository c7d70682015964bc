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
 * In-place amplitude kernels for the three supported gates.
 *
 * Basis index convention: wire w is bit w of the index (wire 0 is the least
 * significant bit). Every kernel touches each amplitude a constant number of
 * times; no kernel materializes a 2^n x 2^n matrix.
 *
 * Two implementations share one signature set:
 *  - `reference::` plain serial loops, kept as the test oracle;
 *  - `parallel::`  OpenMP work-sharing over amplitude pairs, used by
 *    StateVector once the register is large enough to amortize a parallel
 *    region (see kParallelMinQubits).
 * Elementwise kernels produce bit-identical results in both versions. The
 * parallel expectation reduction sums fixed-size blocks in index order so its
 * result does not depend on the thread count either.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qtcnn::qsim {

using Complex = std::complex<double>;

/// Registers with at least this many qubits use the OpenMP kernels.
inline constexpr int kParallelMinQubits = 12;

namespace reference {

void apply_ry(std::span<Complex> amps, int wire, double theta);
void apply_rz(std::span<Complex> amps, int wire, double theta);
void apply_cnot(std::span<Complex> amps, int control, int target);
double expect_z(std::span<const Complex> amps, int wire);
double norm_squared(std::span<const Complex> amps);

}  // namespace reference

namespace parallel {

void apply_ry(std::span<Complex> amps, int wire, double theta);
void apply_rz(std::span<Complex> amps, int wire, double theta);
void apply_cnot(std::span<Complex> amps, int control, int target);
double expect_z(std::span<const Complex> amps, int wire);
double norm_squared(std::span<const Complex> amps);

}  // namespace parallel

}  // namespace qtcnn::qsim
