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
#include <string>
#include <vector>

#include "qtcnn/autodiff/tensor.hpp"

namespace qtcnn::autodiff {

struct ParamGroup {
    std::string name;
    Shape shape;
    std::vector<double> values;
};

/// Plain storage for a model's trainable arrays, in a fixed group order.
///
/// The set itself holds no graph state. bind() hands out fresh leaf tensors
/// (copies), so any number of threads can build independent graphs from one
/// set at the same time.
class ParameterSet {
  public:
    /// Returns the group index.
    std::size_t add(std::string name, Shape shape, std::vector<double> values);

    std::span<const ParamGroup> groups() const { return groups_; }
    const ParamGroup& group(std::size_t i) const { return groups_.at(i); }
    ParamGroup& group(std::size_t i) { return groups_.at(i); }
    const ParamGroup* find(std::string_view name) const;

    std::size_t total_size() const;

    std::vector<Tensor> bind() const;
    /// Concatenated leaf gradients in group order.
    static std::vector<double> gather_grads(std::span<const Tensor> leaves);

    std::vector<double> flatten() const;
    void assign(std::span<const double> flat);

  private:
    std::vector<ParamGroup> groups_;
};

}  // namespace qtcnn::autodiff
