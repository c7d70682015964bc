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
 * The parameterized ansaetze used by the quantum models.
 *
 * Convolution unit on a wire pair (i, j), six angles t1..t6. As an operator
 * product (rightmost factor acts first):
 *
 *     CNOT(i->j) . RY_i(t1) RZ_j(t2) . CNOT(j->i) . RY_i(t3) RZ_j(t4) . RY_i(t5) RZ_j(t6)
 *
 * Convolution/pooling layout: layer l pairs its kept wires as non-overlapping
 * neighbours (w0,w1), (w2,w3), ...; pooling keeps the even positions W[::2].
 * Pooled wires receive no further gates (no measurement collapse) and the
 * readout is <Z> on wire 0.
 *
 * Parameter order in a flat vector: layer-major, pair-major, angle-minor. In a
 * shared layout each layer owns one 6-angle block used by all of its pairs.
 *
 * QNN ansatz: RY angle embedding, then per layer one RY per wire followed by
 * the CNOT ring CNOT(0->1), CNOT(1->2), ..., CNOT(n-2->n-1), CNOT(n-1->0).
 */

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qtcnn/circuits/circuit.hpp"

namespace qtcnn::circuits {

inline constexpr std::size_t kConvUnitParams = 6;

using ConvUnitParams = std::array<double, kConvUnitParams>;

/// Applies one convolution unit to wires (i, j) of `state`.
void apply_conv_unit(StateVector& state, std::pair<int, int> wires, const ConvUnitParams& theta);

/// min(L, floor(log2(n_qubits))).
int effective_depth(int depth, int n_qubits);

struct QConvLayout {
    int n_qubits = 0;
    int depth_requested = 0;
    int depth_effective = 0;
    bool shared = true;
    /// kept_wires[l] are the active wires entering layer l; the final entry is
    /// what survives the last pooling, so there are depth_effective + 1 lists.
    std::vector<std::vector<int>> kept_wires;

    std::size_t pairs_in_layer(int layer) const { return kept_wires[layer].size() / 2; }
    std::size_t parameter_count() const;
    /// First flat index of the 6-angle block used by `pair` of `layer`.
    std::size_t param_offset(int layer, std::size_t pair) const;
};

/// Throws ConfigError unless n_qubits is a power of two >= 2 and depth >= 1.
QConvLayout build_qconv_layout(int n_qubits, int depth, bool shared);

/// Circuit with n_qubits embedding inputs, the layout's parameters, readout {0}.
Circuit build_qconv_circuit(const QConvLayout& layout);

/// <Z_0> after embedding `z` and running the conv/pool stack.
double eval_qconv(std::span<const double> z, const QConvLayout& layout, std::span<const double> params);

/// Expands shared per-layer angle blocks into the equivalent unshared vector.
std::vector<double> replicate_shared_params(const QConvLayout& shared_layout,
                                            std::span<const double> shared_params);

struct AnsatzParams {
    int n_layers = 0;
    int n_qubits = 0;
    /// Row-major n_layers x n_qubits rotation angles.
    std::vector<double> layers;
    std::vector<double> readout_weights;
    double readout_bias = 0.0;

    AnsatzParams() = default;
    AnsatzParams(int n_layers, int n_qubits);
    void validate() const;
};

/// Circuit with n_qubits embedding inputs and n_layers * n_qubits parameters,
/// reading out every wire.
Circuit build_qnn_circuit(int n_qubits, int n_layers);

/// [<Z_0>, ..., <Z_{n-1}>] for the embedding `phi` and the ansatz angles.
std::vector<double> eval_qnn(std::span<const double> phi, const AnsatzParams& params);

}  // namespace qtcnn::circuits
