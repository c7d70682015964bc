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
 * Parameter-shift differentiation of circuit expectations.
 *
 * For a rotation exp(-i t P / 2) with a Pauli generator P,
 *     d<O>/dt = ( <O>(t + pi/2) - <O>(t - pi/2) ) / 2
 * exactly. When one angle drives several gates (shared parameters, or an
 * input reused by several embeddings) the derivative is the sum of the
 * per-gate shifts, so circuit_jacobian shifts one gate occurrence at a time
 * and accumulates into the angle's source slot.
 */

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qtcnn/autodiff/tensor.hpp"
#include "qtcnn/circuits/circuit.hpp"

namespace qtcnn::autodiff {

/// Shift-rule derivative of `f` along coordinate `index`. Valid when every
/// angle enters `f` through exactly one RY/RZ gate. Throws ArgumentError if
/// `index` is out of range.
double param_shift_grad(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> angles, std::size_t index);

struct CircuitJacobian {
    std::size_t n_outputs = 0;
    std::vector<double> values;
    /// Row-major (n_outputs x n_inputs) and (n_outputs x n_params).
    std::vector<double> d_inputs;
    std::vector<double> d_params;
};

/// Expectations and their exact derivatives with respect to every input and
/// parameter angle.
/// Columns that are not wanted are left at zero and cost nothing.
CircuitJacobian circuit_jacobian(const circuits::Circuit& circuit, std::span<const double> inputs,
                                 std::span<const double> params, bool want_inputs = true,
                                 bool want_params = true);

/// Differentiable circuit evaluation. `inputs` has the circuit's input count,
/// `params` its parameter count; returns the readout expectations. Backward
/// runs the shift rule for both arguments so gradients reach whatever
/// produced the embedding angles. The circuit must outlive the graph.
Tensor quantum_node(const circuits::Circuit& circuit, const Tensor& inputs, const Tensor& params);

}  // namespace qtcnn::autodiff
