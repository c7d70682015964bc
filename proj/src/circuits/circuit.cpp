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

#include "qtcnn/circuits/circuit.hpp"

#include <string>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::circuits {

using qsim::GateOp;

Circuit::Circuit(int n_qubits, std::size_t n_inputs, std::size_t n_params)
    : n_qubits_(n_qubits), n_inputs_(n_inputs), n_params_(n_params) {
    if (n_qubits < 1 || n_qubits > qsim::kMaxQubits) {
        throw ConfigError("circuit qubit count " + std::to_string(n_qubits) + " out of range");
    }
}

void Circuit::add_cnot(int control, int target) {
    if (control == target || control < 0 || target < 0 || control >= n_qubits_ ||
        target >= n_qubits_) {
        throw ArgumentError("invalid CNOT wires");
    }
    gates_.push_back({GateKind::CNOT, {control, target}, AngleSource::Fixed, 0, 0.0});
}

void Circuit::add_rotation(GateKind kind, int wire, AngleSource source, std::size_t index,
                           double fixed_angle) {
    if (kind == GateKind::CNOT) throw ArgumentError("add_rotation called with CNOT");
    if (wire < 0 || wire >= n_qubits_) throw ArgumentError("invalid rotation wire");
    if (source == AngleSource::Input && index >= n_inputs_) throw ArgumentError("input index out of range");
    if (source == AngleSource::Param && index >= n_params_) throw ArgumentError("param index out of range");
    gates_.push_back({kind, {wire, wire}, source, index, fixed_angle});
}

void Circuit::set_readout(std::vector<int> wires) {
    for (int w : wires) {
        if (w < 0 || w >= n_qubits_) throw ArgumentError("invalid readout wire");
    }
    readout_ = std::move(wires);
}

void Circuit::check_arguments(std::span<const double> inputs, std::span<const double> params) const {
    if (inputs.size() != n_inputs_) {
        throw ArgumentError("circuit expects " + std::to_string(n_inputs_) + " inputs, got " +
                            std::to_string(inputs.size()));
    }
    if (params.size() != n_params_) {
        throw ArgumentError("circuit expects " + std::to_string(n_params_) + " parameters, got " +
                            std::to_string(params.size()));
    }
}

double Circuit::angle_of(const CircuitGate& gate, std::span<const double> inputs,
                         std::span<const double> params) const {
    switch (gate.source) {
        case AngleSource::Input:
            return inputs[gate.index];
        case AngleSource::Param:
            return params[gate.index];
        case AngleSource::Fixed:
            break;
    }
    return gate.fixed_angle;
}

void Circuit::apply_range(StateVector& state, std::size_t first, std::size_t last,
                          std::span<const double> inputs, std::span<const double> params) const {
    for (std::size_t g = first; g < last; ++g) {
        const CircuitGate& gate = gates_[g];
        if (gate.kind == GateKind::CNOT) {
            qsim::apply_gate(state, GateOp::cnot(gate.wires[0], gate.wires[1]));
        } else {
            qsim::apply_gate(state, GateOp{gate.kind, gate.wires, angle_of(gate, inputs, params)});
        }
    }
}

std::vector<double> Circuit::measure(const StateVector& state) const {
    std::vector<double> out;
    out.reserve(readout_.size());
    for (int w : readout_) out.push_back(qsim::expect_z(state, w));
    return out;
}

std::vector<double> Circuit::evaluate(std::span<const double> inputs,
                                      std::span<const double> params) const {
    check_arguments(inputs, params);
    StateVector state(n_qubits_);
    apply_range(state, 0, gates_.size(), inputs, params);
    return measure(state);
}

}  // namespace qtcnn::circuits
