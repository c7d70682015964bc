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


#include "qtcnn/models/config.hpp"

#include <array>

#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/format.hpp"

namespace qtcnn::models {

namespace {

constexpr std::array<ModelKind, 5> kKinds{ModelKind::Qtcnn, ModelKind::Qcnn, ModelKind::Qnn, ModelKind::Mlp,
                                         ModelKind::Momentum};

}  // namespace

std::string_view model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Qtcnn: return "qtcnn";
        case ModelKind::Qcnn: return "qcnn";
        case ModelKind::Qnn: return "qnn";
        case ModelKind::Mlp: return "mlp";
        case ModelKind::Momentum: return "momentum";
    }
    return "unknown";
}

std::span<const ModelKind> all_model_kinds() { return kKinds; }

ModelKind parse_model_kind(std::string_view name) {
    for (ModelKind k : kKinds) {
        if (model_kind_name(k) == name) return k;
    }
    std::string supported;
    for (ModelKind k : kKinds) {
        if (!supported.empty()) supported += ", ";
        supported += model_kind_name(k);
    }
    throw ConfigError("unknown model '" + std::string(name) + "' (supported: " + supported + ")");
}

std::string_view optimizer_name(OptimizerKind kind) { return kind == OptimizerKind::Adam ? "adam" : "adamw"; }

OptimizerKind parse_optimizer(std::string_view name) {
    if (name == "adamw") return OptimizerKind::AdamW;
    if (name == "adam") return OptimizerKind::Adam;
    throw ConfigError("unknown optimizer '" + std::string(name) + "' (supported: adamw, adam)");
}

ModelConfig default_model_config(ModelKind kind) {
    ModelConfig c;
    c.kind = kind;
    if (kind == ModelKind::Qnn) {
        c.depth = 2;
        c.batch_size = 512;
        c.lr = 2e-3;
        c.optimizer = OptimizerKind::Adam;
        c.weight_decay = 0.0;
    }
    return c;
}

std::vector<std::pair<std::string, std::string>> ModelConfig::entries() const {
    return {
        {"model", std::string(model_kind_name(kind))},
        {"n_qubits", std::to_string(n_qubits)},
        {"depth", std::to_string(depth)},
        {"seq_len", std::to_string(seq_len)},
        {"n_features", std::to_string(n_features)},
        {"epochs", std::to_string(epochs)},
        {"batch_size", std::to_string(batch_size)},
        {"lr", format_double(lr)},
        {"optimizer", std::string(optimizer_name(optimizer))},
        {"weight_decay", format_double(weight_decay)},
        {"seed", std::to_string(seed)},
    };
}

void ModelConfig::validate() const {
    if (n_qubits < 1 || n_qubits > 14) throw ConfigError("n_qubits must be in [1, 14]");
    if ((kind == ModelKind::Qtcnn || kind == ModelKind::Qcnn) && (n_qubits < 2 || (n_qubits & (n_qubits - 1)) != 0)) {
        throw ConfigError("conv/pool models need n_qubits to be a power of two >= 2");
    }
    if (depth < 1) throw ConfigError("depth must be >= 1");
    if (seq_len < 1) throw ConfigError("seq_len must be >= 1");
    if (epochs < 0) throw ConfigError("epochs must be >= 0");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (!(lr > 0.0)) throw ConfigError("lr must be > 0");
    if (!(weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
    if ((kind == ModelKind::Qcnn || kind == ModelKind::Qnn) && n_features != 0 &&
        n_features < static_cast<std::size_t>(n_qubits)) {
        throw ConfigError("PCA models need at least n_qubits features");
    }
}

}  // namespace qtcnn::models
