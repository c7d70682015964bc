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

#include "qtcnn/autodiff/optim.hpp"

#include <cmath>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::autodiff {

void adamw_step(std::span<double> params, std::span<const double> grads, AdamState& state,
                const AdamConfig& config) {
    if (params.size() != grads.size()) throw ArgumentError("adamw_step: params/grads size mismatch");
    if (state.m.size() != params.size()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
        state.step = 0;
    }
    ++state.step;
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        double g = grads[i];
        if (config.decoupled) {
            params[i] -= config.lr * config.weight_decay * params[i];
        } else {
            g += config.weight_decay * params[i];
        }
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * g;
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * g * g;
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= config.lr * m_hat / (std::sqrt(v_hat) + config.eps);
    }
}

}  // namespace qtcnn::autodiff
