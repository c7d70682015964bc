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

#include "qtcnn/autodiff/loss.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::autodiff {

Tensor bce_loss(const Tensor& y_hat, std::span<const double> labels) {
    if (y_hat.size() != labels.size() || labels.empty()) {
        throw ArgumentError("bce_loss: prediction and label lengths differ");
    }
    const std::size_t n = labels.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::clamp(y_hat.values()[i], kProbClamp, 1.0 - kProbClamp);
        acc += labels[i] * std::log(p) + (1.0 - labels[i]) * std::log(1.0 - p);
    }
    std::vector<double> y(labels.begin(), labels.end());
    return Tensor::from_op({1}, {-acc / static_cast<double>(n)}, {y_hat}, [y = std::move(y)](Node& self) {
        Node* p = self.parents[0].get();
        if (!p->requires_grad) return;
        auto& g = p->grad_buffer();
        const double scale = self.grad[0] / static_cast<double>(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double raw = p->value[i];
            // Derivative of the clamped loss: zero where the clamp is active.
            if (raw < kProbClamp || raw > 1.0 - kProbClamp) continue;
            g[i] += scale * (-(y[i] / raw) + (1.0 - y[i]) / (1.0 - raw));
        }
    });
}

}  // namespace qtcnn::autodiff
