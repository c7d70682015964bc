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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtcnn::models {

enum class ModelKind { Qtcnn, Qcnn, Qnn, Mlp, Momentum };

enum class OptimizerKind { AdamW, Adam };

std::string_view model_kind_name(ModelKind kind);
/// Throws ConfigError listing the supported kinds.
ModelKind parse_model_kind(std::string_view name);
std::span<const ModelKind> all_model_kinds();

std::string_view optimizer_name(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

inline constexpr std::size_t kEncoderChannels = 32;
inline constexpr std::size_t kEncoderKernel = 3;
inline constexpr std::size_t kHeadHidden1 = 64;
inline constexpr std::size_t kHeadHidden2 = 32;
inline constexpr std::size_t kMlpHidden[3] = {384, 192, 96};
inline constexpr double kMlpDropout = 0.1;
inline constexpr double kMomentumEps = 1e-9;

struct ModelConfig {
    ModelKind kind = ModelKind::Qtcnn;
    int n_qubits = 8;
    /// Conv/pool layers for QTCNN and QCNN; ansatz layers for QNN.
    int depth = 3;
    std::size_t seq_len = 20;
    /// Per-day feature count F; taken from the training data.
    std::size_t n_features = 0;
    int epochs = 50;
    std::size_t batch_size = 128;
    double lr = 1e-3;
    OptimizerKind optimizer = OptimizerKind::AdamW;
    double weight_decay = 1e-2;
    std::uint64_t seed = 0;

    /// Canonical (key, value) pairs in a fixed order.
    std::vector<std::pair<std::string, std::string>> entries() const;
    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Per-kind defaults: QTCNN/QCNN 50 epochs, batch 128, lr 1e-3, AdamW;
/// QNN batch 512, lr 2e-3, Adam, 2 layers; MLP as QTCNN.
ModelConfig default_model_config(ModelKind kind);

}  // namespace qtcnn::models
