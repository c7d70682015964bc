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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qtcnn/qsim/state_vector.hpp"

namespace qtcnn::circuits {

using qsim::GateKind;
using qsim::StateVector;

/// Where a rotation gate takes its angle from.
enum class AngleSource { Fixed, Input, Param };

struct CircuitGate {
    GateKind kind = GateKind::RY;
    std::array<int, 2> wires{0, 0};
    AngleSource source = AngleSource::Fixed;
    /// Index into the input or parameter vector (unused for Fixed and CNOT).
    std::size_t index = 0;
    double fixed_angle = 0.0;

    bool is_rotation() const { return kind != GateKind::CNOT; }
};

/// A declarative gate list whose rotation angles are bound at evaluation time
/// to an input vector (data embedding) and a parameter vector (trainable).
///
/// A parameter may drive several gates (parameter sharing). Evaluation returns
/// <Z> on each readout wire, in readout order.
class Circuit {
  public:
    Circuit(int n_qubits, std::size_t n_inputs, std::size_t n_params);

    void add_cnot(int control, int target);
    void add_rotation(GateKind kind, int wire, AngleSource source, std::size_t index,
                      double fixed_angle = 0.0);
    void set_readout(std::vector<int> wires);

    int n_qubits() const { return n_qubits_; }
    std::size_t n_inputs() const { return n_inputs_; }
    std::size_t n_params() const { return n_params_; }
    std::span<const CircuitGate> gates() const { return gates_; }
    std::span<const int> readout() const { return readout_; }

    /// Checks input/parameter lengths; throws ArgumentError on mismatch.
    void check_arguments(std::span<const double> inputs, std::span<const double> params) const;

    double angle_of(const CircuitGate& gate, std::span<const double> inputs,
                    std::span<const double> params) const;

    /// Applies gates [first, last) to `state`.
    void apply_range(StateVector& state, std::size_t first, std::size_t last,
                     std::span<const double> inputs, std::span<const double> params) const;

    /// Readout expectations of the prepared state.
    std::vector<double> measure(const StateVector& state) const;

    std::vector<double> evaluate(std::span<const double> inputs,
                                 std::span<const double> params) const;

  private:
    int n_qubits_;
    std::size_t n_inputs_;
    std::size_t n_params_;
    std::vector<CircuitGate> gates_;
    std::vector<int> readout_;
};

}  // namespace qtcnn::circuits
