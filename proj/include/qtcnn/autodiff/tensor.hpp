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
 * Minimal reverse-mode tape.
 *
 * Every op allocates a Node holding its forward value and a closure that
 * pushes the node's gradient into its parents. The graph is the tape: calling
 * backward() on a scalar root orders the reachable nodes topologically and
 * runs each closure exactly once, in reverse. Leaf gradients accumulate across
 * backward() calls until zero_grad(); interior gradients are reset at the
 * start of every pass, so replaying a tape is bit-for-bit repeatable.
 *
 * Graphs are not shared across threads. Parallel training builds one graph per
 * sample over private copies of the parameter leaves.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qtcnn::autodiff {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

struct Node {
    Shape shape;
    std::vector<double> value;
    std::vector<double> grad;  // empty until first touched
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backward_fn;

    bool is_leaf() const { return parents.empty(); }
    /// Gradient buffer, allocated as zeros on first use.
    std::vector<double>& grad_buffer();
};

class Tensor {
  public:
    Tensor() = default;

    /// Non-differentiable input.
    static Tensor constant(Shape shape, std::vector<double> values);
    /// Differentiable leaf.
    static Tensor parameter(Shape shape, std::vector<double> values);
    static Tensor scalar(double value) { return constant({1}, {value}); }

    /// Interior node produced by an op. `backward` runs only when the result
    /// requires a gradient.
    static Tensor from_op(Shape shape, std::vector<double> values, std::vector<Tensor> parents,
                          std::function<void(Node&)> backward);

    bool defined() const { return static_cast<bool>(node_); }
    const Shape& shape() const { return node_->shape; }
    std::size_t size() const { return node_->value.size(); }
    std::size_t dim(std::size_t axis) const { return node_->shape.at(axis); }
    std::size_t rank() const { return node_->shape.size(); }

    std::span<const double> values() const { return node_->value; }
    /// Writable values; only meaningful on leaves.
    std::span<double> mutable_values() { return node_->value; }
    double item() const;

    bool requires_grad() const { return node_->requires_grad; }
    /// Gradient of the last backward pass (zeros if never reached).
    std::vector<double> grad() const;

    /// Reverse pass from this scalar node. Throws ArgumentError if not scalar.
    void backward() const;
    void zero_grad() const;

    Node& node() const { return *node_; }
    const std::shared_ptr<Node>& node_ptr() const { return node_; }

  private:
    explicit Tensor(std::shared_ptr<Node> n) : node_(std::move(n)) {}
    std::shared_ptr<Node> node_;
};

}  // namespace qtcnn::autodiff
