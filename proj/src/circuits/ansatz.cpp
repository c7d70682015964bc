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

#include "qtcnn/circuits/ansatz.hpp"

#include <string>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::circuits {

using qsim::GateOp;

namespace {

// Emits the conv unit with angle indices base..base+5.
void emit_conv_unit(Circuit& c, int i, int j, std::size_t base) {
    c.add_rotation(GateKind::RY, i, AngleSource::Param, base + 4);
    c.add_rotation(GateKind::RZ, j, AngleSource::Param, base + 5);
    c.add_rotation(GateKind::RY, i, AngleSource::Param, base + 2);
    c.add_rotation(GateKind::RZ, j, AngleSource::Param, base + 3);
    c.add_cnot(j, i);
    c.add_rotation(GateKind::RY, i, AngleSource::Param, base + 0);
    c.add_rotation(GateKind::RZ, j, AngleSource::Param, base + 1);
    c.add_cnot(i, j);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void apply_conv_unit(StateVector& state, std::pair<int, int> wires, const ConvUnitParams& theta) {
    const auto [i, j] = wires;
    if (i == j) throw ArgumentError("conv unit needs two distinct wires");
    if (i < 0 || j < 0 || i >= state.n_qubits() || j >= state.n_qubits()) {
        throw ArgumentError("conv unit wire out of range");
    }
    qsim::apply_gate(state, GateOp::ry(i, theta[4]));
    qsim::apply_gate(state, GateOp::rz(j, theta[5]));
    qsim::apply_gate(state, GateOp::ry(i, theta[2]));
    qsim::apply_gate(state, GateOp::rz(j, theta[3]));
    qsim::apply_gate(state, GateOp::cnot(j, i));
    qsim::apply_gate(state, GateOp::ry(i, theta[0]));
    qsim::apply_gate(state, GateOp::rz(j, theta[1]));
    qsim::apply_gate(state, GateOp::cnot(i, j));
}

int effective_depth(int depth, int n_qubits) {
    int log2n = 0;
    while ((2 << log2n) <= n_qubits) ++log2n;
    return depth < log2n ? depth : log2n;
}

std::size_t QConvLayout::parameter_count() const {
    if (shared) return kConvUnitParams * static_cast<std::size_t>(depth_effective);
    std::size_t pairs = 0;
    for (int l = 0; l < depth_effective; ++l) pairs += pairs_in_layer(l);
    return kConvUnitParams * pairs;
}

std::size_t QConvLayout::param_offset(int layer, std::size_t pair) const {
    if (shared) return kConvUnitParams * static_cast<std::size_t>(layer);
    std::size_t pairs = 0;
    for (int l = 0; l < layer; ++l) pairs += pairs_in_layer(l);
    return kConvUnitParams * (pairs + pair);
}

QConvLayout build_qconv_layout(int n_qubits, int depth, bool shared) {
    if (!is_power_of_two(n_qubits) || n_qubits < 2) {
        throw ConfigError("conv layout needs a power-of-two qubit count >= 2, got " +
                          std::to_string(n_qubits));
    }
    if (n_qubits > qsim::kMaxQubits) throw ConfigError("conv layout qubit count too large");
    if (depth < 1) throw ConfigError("conv layout depth must be >= 1");

    QConvLayout layout;
    layout.n_qubits = n_qubits;
    layout.depth_requested = depth;
    layout.depth_effective = effective_depth(depth, n_qubits);
    layout.shared = shared;

    std::vector<int> wires(static_cast<std::size_t>(n_qubits));
    for (int w = 0; w < n_qubits; ++w) wires[static_cast<std::size_t>(w)] = w;
    layout.kept_wires.push_back(wires);
    for (int l = 0; l < layout.depth_effective; ++l) {
        std::vector<int> next;
        for (std::size_t p = 0; p < wires.size(); p += 2) next.push_back(wires[p]);
        wires = std::move(next);
        layout.kept_wires.push_back(wires);
    }
    return layout;
}

Circuit build_qconv_circuit(const QConvLayout& layout) {
    const auto n = static_cast<std::size_t>(layout.n_qubits);
    Circuit c(layout.n_qubits, n, layout.parameter_count());
    for (std::size_t w = 0; w < n; ++w) {
        c.add_rotation(GateKind::RY, static_cast<int>(w), AngleSource::Input, w);
    }
    for (int l = 0; l < layout.depth_effective; ++l) {
        const auto& wires = layout.kept_wires[static_cast<std::size_t>(l)];
        for (std::size_t p = 0; p < layout.pairs_in_layer(l); ++p) {
            emit_conv_unit(c, wires[2 * p], wires[2 * p + 1], layout.param_offset(l, p));
        }
    }
    c.set_readout({0});
    return c;
}

double eval_qconv(std::span<const double> z, const QConvLayout& layout, std::span<const double> params) {
    return build_qconv_circuit(layout).evaluate(z, params)[0];
}

std::vector<double> replicate_shared_params(const QConvLayout& shared_layout,
                                            std::span<const double> shared_params) {
    if (!shared_layout.shared) throw ArgumentError("layout is not shared");
    if (shared_params.size() != shared_layout.parameter_count()) {
        throw ArgumentError("shared parameter length mismatch");
    }
    QConvLayout unshared = shared_layout;
    unshared.shared = false;
    std::vector<double> out(unshared.parameter_count());
    for (int l = 0; l < shared_layout.depth_effective; ++l) {
        for (std::size_t p = 0; p < shared_layout.pairs_in_layer(l); ++p) {
            const std::size_t dst = unshared.param_offset(l, p);
            const std::size_t src = shared_layout.param_offset(l, p);
            for (std::size_t k = 0; k < kConvUnitParams; ++k) out[dst + k] = shared_params[src + k];
        }
    }
    return out;
}

AnsatzParams::AnsatzParams(int n_layers_, int n_qubits_)
    : n_layers(n_layers_),
      n_qubits(n_qubits_),
      layers(static_cast<std::size_t>(n_layers_ * n_qubits_), 0.0),
      readout_weights(static_cast<std::size_t>(n_qubits_), 0.0) {}

void AnsatzParams::validate() const {
    if (n_layers < 1 || n_qubits < 1) throw ArgumentError("ansatz needs >= 1 layer and qubit");
    if (layers.size() != static_cast<std::size_t>(n_layers * n_qubits)) {
        throw ArgumentError("ansatz layer angles must have shape (L, n_qubits)");
    }
    if (readout_weights.size() != static_cast<std::size_t>(n_qubits)) {
        throw ArgumentError("readout weights must have n_qubits entries");
    }
}

Circuit build_qnn_circuit(int n_qubits, int n_layers) {
    const auto n = static_cast<std::size_t>(n_qubits);
    Circuit c(n_qubits, n, n * static_cast<std::size_t>(n_layers));
    for (std::size_t w = 0; w < n; ++w) {
        c.add_rotation(GateKind::RY, static_cast<int>(w), AngleSource::Input, w);
    }
    for (std::size_t l = 0; l < static_cast<std::size_t>(n_layers); ++l) {
        for (std::size_t w = 0; w < n; ++w) {
            c.add_rotation(GateKind::RY, static_cast<int>(w), AngleSource::Param, l * n + w);
        }
        if (n_qubits > 1) {
            for (int w = 0; w + 1 < n_qubits; ++w) c.add_cnot(w, w + 1);
            c.add_cnot(n_qubits - 1, 0);
        }
    }
    std::vector<int> readout(n);
    for (std::size_t w = 0; w < n; ++w) readout[w] = static_cast<int>(w);
    c.set_readout(std::move(readout));
    return c;
}

std::vector<double> eval_qnn(std::span<const double> phi, const AnsatzParams& params) {
    params.validate();
    return build_qnn_circuit(params.n_qubits, params.n_layers).evaluate(phi, params.layers);
}

}  // namespace qtcnn::circuits
