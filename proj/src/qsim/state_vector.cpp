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

#include "qtcnn/qsim/state_vector.hpp"

#include <algorithm>
#include <string>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::qsim {

namespace {

void check_wire(const StateVector& state, int wire) {
    if (wire < 0 || wire >= state.n_qubits()) {
        throw ArgumentError("wire " + std::to_string(wire) + " out of range for " +
                            std::to_string(state.n_qubits()) + "-qubit register");
    }
}

bool use_parallel(const StateVector& state) { return state.n_qubits() >= kParallelMinQubits; }

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
    return n_qubits_ >= kParallelMinQubits ? parallel::norm_squared(amps_)
                                           : reference::norm_squared(amps_);
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

void apply_gate(StateVector& state, const GateOp& gate) {
    auto amps = state.amplitudes();
    const bool par = use_parallel(state);
    switch (gate.kind) {
        case GateKind::RY:
            check_wire(state, gate.wires[0]);
            par ? parallel::apply_ry(amps, gate.wires[0], gate.angle)
                : reference::apply_ry(amps, gate.wires[0], gate.angle);
            break;
        case GateKind::RZ:
            check_wire(state, gate.wires[0]);
            par ? parallel::apply_rz(amps, gate.wires[0], gate.angle)
                : reference::apply_rz(amps, gate.wires[0], gate.angle);
            break;
        case GateKind::CNOT:
            check_wire(state, gate.wires[0]);
            check_wire(state, gate.wires[1]);
            if (gate.wires[0] == gate.wires[1]) throw ArgumentError("CNOT control equals target");
            par ? parallel::apply_cnot(amps, gate.wires[0], gate.wires[1])
                : reference::apply_cnot(amps, gate.wires[0], gate.wires[1]);
            break;
    }
}

void angle_embed(StateVector& state, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(state.n_qubits())) {
        throw ArgumentError("embedding length " + std::to_string(x.size()) + " != qubit count " +
                            std::to_string(state.n_qubits()));
    }
    for (int j = 0; j < state.n_qubits(); ++j) apply_gate(state, GateOp::ry(j, x[j]));
}

double expect_z(const StateVector& state, int wire) {
    check_wire(state, wire);
    const double z = use_parallel(state) ? parallel::expect_z(state.amplitudes(), wire)
                                         : reference::expect_z(state.amplitudes(), wire);
    return std::clamp(z, -1.0, 1.0);
}

double fidelity(std::span<const double> x_i, std::span<const double> x_j, int n_qubits) {
    if (x_i.size() != static_cast<std::size_t>(n_qubits) ||
        x_j.size() != static_cast<std::size_t>(n_qubits)) {
        throw ArgumentError("fidelity inputs must both have length n_qubits");
    }
    StateVector state(n_qubits);
    angle_embed(state, x_j);
    // S(x) is a product of commuting single-wire rotations, so its adjoint is
    // the same product with negated angles.
    for (int w = 0; w < n_qubits; ++w) apply_gate(state, GateOp::ry(w, -x_i[w]));
    return std::clamp(std::norm(state[0]), 0.0, 1.0);
}

}  // namespace qtcnn::qsim
