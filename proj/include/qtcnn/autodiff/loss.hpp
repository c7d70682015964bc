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

#include "qtcnn/autodiff/tensor.hpp"

namespace qtcnn::autodiff {

/// Probabilities are clamped to [kProbClamp, 1 - kProbClamp] before the log.
inline constexpr double kProbClamp = 1e-7;

/// Mean binary cross-entropy of probabilities `y_hat` against {0,1} labels.
Tensor bce_loss(const Tensor& y_hat, std::span<const double> labels);

}  // namespace qtcnn::autodiff
