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

#include <span>
#include <vector>

#include "qtcnn/autodiff/tensor.hpp"
#include "qtcnn/common/rng.hpp"

namespace qtcnn::autodiff {

/// (m x k) . (k x n) -> (m x n).
Tensor matmul(const Tensor& a, const Tensor& b);

/// x . W^T + b. `x` is (B x in) or a vector (in); W is (out x in); b is (out).
/// The result is (B x out), or (out) for vector input.
Tensor affine(const Tensor& x, const Tensor& weight, const Tensor& bias);

/// Same-padded 1D convolution over time. x is (T x C_in), weight is
/// (C_out x C_in x K) with K odd, bias is (C_out). Result is (T x C_out).
Tensor conv1d(const Tensor& x, const Tensor& weight, const Tensor& bias);

Tensor relu(const Tensor& x);
Tensor tanh(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor scale(const Tensor& x, double factor);
Tensor add(const Tensor& a, const Tensor& b);

/// Mean over the time axis: (T x C) -> (C).
Tensor global_avg_pool(const Tensor& x);

/// Concatenation of two vectors, or of two matrices along columns.
Tensor concat(const Tensor& a, const Tensor& b);

/// Mean of all elements -> shape (1).
Tensor mean(const Tensor& x);

/// Running statistics of one BatchNorm layer.
struct BatchNormStats {
    std::vector<double> running_mean;
    std::vector<double> running_var;
    double momentum = 0.1;
    double eps = 1e-5;

    explicit BatchNormStats(std::size_t features = 0)
        : running_mean(features, 0.0), running_var(features, 1.0) {}
};

/// Per-feature batch normalization of (B x F). Training mode normalizes with
/// the biased batch variance and folds the unbiased variance into the running
/// estimate; evaluation mode uses the running estimate.
Tensor batchnorm1d(const Tensor& x, const Tensor& gamma, const Tensor& beta, BatchNormStats& stats,
                   bool training);

/// Inverted dropout; identity when `training` is false or p == 0.
Tensor dropout(const Tensor& x, double p, bool training, Rng& rng);

}  // namespace qtcnn::autodiff
