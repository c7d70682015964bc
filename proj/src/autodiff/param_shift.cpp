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

#include "qtcnn/autodiff/param_shift.hpp"

#include <numbers>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::autodiff {

using circuits::AngleSource;
using qsim::GateOp;

namespace {
constexpr double kShift = std::numbers::pi / 2.0;
}

double param_shift_grad(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> angles, std::size_t index) {
    if (index >= angles.size()) throw ArgumentError("param_shift_grad index out of range");
    std::vector<double> shifted(angles.begin(), angles.end());
    shifted[index] = angles[index] + kShift;
    const double plus = f(shifted);
    shifted[index] = angles[index] - kShift;
    const double minus = f(shifted);
    return 0.5 * (plus - minus);
}

CircuitJacobian circuit_jacobian(const circuits::Circuit& circuit, std::span<const double> inputs,
                                 std::span<const double> params, bool want_inputs, bool want_params) {
    circuit.check_arguments(inputs, params);
    const auto gates = circuit.gates();
    const std::size_t n_out = circuit.readout().size();
    const std::size_t n_in = circuit.n_inputs();
    const std::size_t n_par = circuit.n_params();

    CircuitJacobian jac;
    jac.n_outputs = n_out;
    jac.d_inputs.assign(n_out * n_in, 0.0);
    jac.d_params.assign(n_out * n_par, 0.0);

    // `prefix` holds the state after gates [0, g). Each shifted branch copies
    // it and replays only the suffix.
    qsim::StateVector prefix(circuit.n_qubits());
    qsim::StateVector branch(circuit.n_qubits());
    for (std::size_t g = 0; g < gates.size(); ++g) {
        const auto& gate = gates[g];
        const double angle = circuit.angle_of(gate, inputs, params);
        const bool wanted = (gate.source == AngleSource::Input && want_inputs) ||
                            (gate.source == AngleSource::Param && want_params);
        if (gate.is_rotation() && wanted) {
            std::vector<double> diff(n_out);
            for (int sign : {+1, -1}) {
                branch = prefix;
                qsim::apply_gate(branch, GateOp{gate.kind, gate.wires, angle + sign * kShift});
                circuit.apply_range(branch, g + 1, gates.size(), inputs, params);
                const auto e = circuit.measure(branch);
                for (std::size_t r = 0; r < n_out; ++r) diff[r] += sign * 0.5 * e[r];
            }
            const bool is_input = gate.source == AngleSource::Input;
            auto& dst = is_input ? jac.d_inputs : jac.d_params;
            const std::size_t width = is_input ? n_in : n_par;
            for (std::size_t r = 0; r < n_out; ++r) dst[r * width + gate.index] += diff[r];
        }
        circuit.apply_range(prefix, g, g + 1, inputs, params);
    }
    jac.values = circuit.measure(prefix);
    return jac;
}

Tensor quantum_node(const circuits::Circuit& circuit, const Tensor& inputs, const Tensor& params) {
    circuit.check_arguments(inputs.values(), params.values());
    const circuits::Circuit* c = &circuit;
    auto values = circuit.evaluate(inputs.values(), params.values());
    const std::size_t n_out = values.size();
    return Tensor::from_op({n_out}, std::move(values), {inputs, params}, [c, n_out](Node& self) {
        Node* pin = self.parents[0].get();
        Node* ppar = self.parents[1].get();
        const auto jac = circuit_jacobian(*c, pin->value, ppar->value, pin->requires_grad, ppar->requires_grad);
        if (pin->requires_grad) {
            auto& g = pin->grad_buffer();
            const std::size_t w = c->n_inputs();
            for (std::size_t r = 0; r < n_out; ++r)
                for (std::size_t i = 0; i < w; ++i) g[i] += self.grad[r] * jac.d_inputs[r * w + i];
        }
        if (ppar->requires_grad) {
            auto& g = ppar->grad_buffer();
            const std::size_t w = c->n_params();
            for (std::size_t r = 0; r < n_out; ++r)
                for (std::size_t i = 0; i < w; ++i) g[i] += self.grad[r] * jac.d_params[r * w + i];
        }
    });
}

}  // namespace qtcnn::autodiff
