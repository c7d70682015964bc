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
 * Dense pure-state register and the {RY, RZ, CNOT} gate set.
 *
 * Wire w is bit w of the basis index. Global phase is not observable and is
 * not tracked. A StateVector is a value type: copy it to branch a simulation,
 * move it between threads freely, but mutate it from one thread at a time.
 */

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qtcnn/qsim/kernels.hpp"

namespace qtcnn::qsim {

inline constexpr int kMaxQubits = 14;

class StateVector {
  public:
    /// |0...0> on `n_qubits` wires. Throws ConfigError outside [1, kMaxQubits].
    explicit StateVector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }

    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const;

    /// Resets to |0...0> without reallocating.
    void reset();

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

enum class GateKind { RY, RZ, CNOT };

struct GateOp {
    GateKind kind = GateKind::RY;
    /// RY/RZ use wires[0]; CNOT uses wires[0] as control and wires[1] as target.
    std::array<int, 2> wires{0, 0};
    double angle = 0.0;

    static GateOp ry(int wire, double theta) { return {GateKind::RY, {wire, wire}, theta}; }
    static GateOp rz(int wire, double theta) { return {GateKind::RZ, {wire, wire}, theta}; }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, {control, target}, 0.0}; }

    GateOp inverse() const {
        GateOp g = *this;
        if (kind != GateKind::CNOT) g.angle = -angle;
        return g;
    }
};

StateVector zero_state(int n_qubits);

/// Applies `gate` in place. Throws ArgumentError on an invalid wire.
void apply_gate(StateVector& state, const GateOp& gate);

/// One RY(x_j) on wire j for every j. Throws ArgumentError on length mismatch.
void angle_embed(StateVector& state, std::span<const double> x);

/// <Z_wire>, in [-1, 1] for normalized input.
double expect_z(const StateVector& state, int wire);

/// |<phi(x_i)|phi(x_j)>|^2 for the RY angle embedding.
double fidelity(std::span<const double> x_i, std::span<const double> x_j, int n_qubits);

}  // namespace qtcnn::qsim
