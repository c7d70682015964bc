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

#include "qtcnn/qsim/kernels.hpp"

namespace qtcnn::qsim::reference {

void apply_ry(std::span<Complex> amps, int wire, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t stride = std::size_t{1} << wire;
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const Complex a0 = amps[i0];
            const Complex a1 = amps[i1];
            amps[i0] = c * a0 - s * a1;
            amps[i1] = s * a0 + c * a1;
        }
    }
}

void apply_rz(std::span<Complex> amps, int wire, double theta) {
    const Complex phase0 = std::polar(1.0, -theta / 2.0);
    const Complex phase1 = std::polar(1.0, theta / 2.0);
    const std::size_t mask = std::size_t{1} << wire;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= (i & mask) ? phase1 : phase0;
    }
}

void apply_cnot(std::span<Complex> amps, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
    }
}

double expect_z(std::span<const Complex> amps, int wire) {
    const std::size_t mask = std::size_t{1} << wire;
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += (i & mask) ? -p : p;
    }
    return acc;
}

double norm_squared(std::span<const Complex> amps) {
    double acc = 0.0;
    for (const Complex& a : amps) acc += std::norm(a);
    return acc;
}

}  // namespace qtcnn::qsim::reference
