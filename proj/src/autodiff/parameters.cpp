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

#include "qtcnn/autodiff/parameters.hpp"

#include "qtcnn/common/errors.hpp"

namespace qtcnn::autodiff {

std::size_t ParameterSet::add(std::string name, Shape shape, std::vector<double> values) {
    if (shape_size(shape) != values.size()) {
        throw ArgumentError("parameter group '" + name + "' shape does not match its values");
    }
    if (find(name)) throw ArgumentError("duplicate parameter group '" + name + "'");
    groups_.push_back({std::move(name), std::move(shape), std::move(values)});
    return groups_.size() - 1;
}

const ParamGroup* ParameterSet::find(std::string_view name) const {
    for (const auto& g : groups_) {
        if (g.name == name) return &g;
    }
    return nullptr;
}

std::size_t ParameterSet::total_size() const {
    std::size_t n = 0;
    for (const auto& g : groups_) n += g.values.size();
    return n;
}

std::vector<Tensor> ParameterSet::bind() const {
    std::vector<Tensor> leaves;
    leaves.reserve(groups_.size());
    for (const auto& g : groups_) leaves.push_back(Tensor::parameter(g.shape, g.values));
    return leaves;
}

std::vector<double> ParameterSet::gather_grads(std::span<const Tensor> leaves) {
    std::vector<double> out;
    for (const Tensor& t : leaves) {
        const auto g = t.grad();
        out.insert(out.end(), g.begin(), g.end());
    }
    return out;
}

std::vector<double> ParameterSet::flatten() const {
    std::vector<double> out;
    out.reserve(total_size());
    for (const auto& g : groups_) out.insert(out.end(), g.values.begin(), g.values.end());
    return out;
}

void ParameterSet::assign(std::span<const double> flat) {
    if (flat.size() != total_size()) throw ArgumentError("parameter vector size mismatch");
    std::size_t pos = 0;
    for (auto& g : groups_) {
        std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                  flat.begin() + static_cast<std::ptrdiff_t>(pos + g.values.size()), g.values.begin());
        pos += g.values.size();
    }
}

}  // namespace qtcnn::autodiff
