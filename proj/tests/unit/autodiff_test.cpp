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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "qtcnn/autodiff/loss.hpp"
#include "qtcnn/autodiff/ops.hpp"
#include "qtcnn/autodiff/optim.hpp"
#include "qtcnn/autodiff/param_shift.hpp"
#include "qtcnn/autodiff/parameters.hpp"
#include "qtcnn/circuits/ansatz.hpp"
#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/rng.hpp"

using namespace qtcnn;
using namespace qtcnn::autodiff;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kH = 1e-5;

std::vector<double> random_values(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(lo, hi);
    return v;
}

// Scalar projection sum_i w_i x_i with fixed weights, so every output
// component contributes to the checked gradient.
Tensor project(const Tensor& x, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x.values()[i];
    return Tensor::from_op({1}, {s}, {x}, [w](Node& self) {
        auto& g = self.parents[0]->grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += w[i] * self.grad[0];
    });
}

using Builder = std::function<Tensor(const std::vector<Tensor>&)>;

// Central finite differences over every component of every leaf; returns the
// worst relative error max(|a - n|) / max(1, |n|).
double gradient_check(const std::vector<Shape>& shapes, const Builder& build, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> values;
    for (const auto& s : shapes) values.push_back(random_values(rng, shape_size(s)));

    auto make_leaves = [&]() {
        std::vector<Tensor> leaves;
        for (std::size_t i = 0; i < shapes.size(); ++i) leaves.push_back(Tensor::parameter(shapes[i], values[i]));
        return leaves;
    };
    Tensor probe = build(make_leaves());
    const auto w = random_values(rng, probe.size());
    auto loss_at = [&]() { return project(build(make_leaves()), w).item(); };

    auto leaves = make_leaves();
    project(build(leaves), w).backward();

    double worst = 0.0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto analytic = leaves[i].grad();
        for (std::size_t k = 0; k < values[i].size(); ++k) {
            const double orig = values[i][k];
            values[i][k] = orig + kH;
            const double up = loss_at();
            values[i][k] = orig - kH;
            const double down = loss_at();
            values[i][k] = orig;
            const double numeric = (up - down) / (2 * kH);
            worst = std::max(worst, std::abs(analytic[k] - numeric) / std::max(1.0, std::abs(numeric)));
        }
    }
    return worst;
}

double cos_circuit(std::span<const double> a) {
    qsim::StateVector s(1);
    qsim::apply_gate(s, qsim::GateOp::ry(0, a[0]));
    return qsim::expect_z(s, 0);
}

// Random 2-qubit circuit with 2 inputs and 4 params, rotations interleaved
// with CNOTs in both directions.
circuits::Circuit random_two_qubit_circuit(Rng& rng) {
    circuits::Circuit c(2, 2, 4);
    c.add_rotation(qsim::GateKind::RY, 0, circuits::AngleSource::Input, 0);
    c.add_rotation(qsim::GateKind::RY, 1, circuits::AngleSource::Input, 1);
    for (std::size_t p = 0; p < 4; ++p) {
        const auto kind = rng.uniform() < 0.5 ? qsim::GateKind::RY : qsim::GateKind::RZ;
        const int wire = static_cast<int>(rng.below(2));
        c.add_rotation(kind, wire, circuits::AngleSource::Param, p);
        if (rng.uniform() < 0.7) c.add_cnot(wire, 1 - wire);
        // Reuse a parameter once to exercise shared-angle accumulation.
        if (p == 3) c.add_rotation(qsim::GateKind::RY, 1 - wire, circuits::AngleSource::Param, 0);
    }
    c.set_readout({0, 1});
    return c;
}

}  // namespace

TEST(Ops, ReluForwardAndMask) {
    auto x = Tensor::parameter({2}, {-1.0, 2.0});
    auto y = relu(x);
    EXPECT_EQ(std::vector<double>(y.values().begin(), y.values().end()), (std::vector<double>{0.0, 2.0}));
    project(y, {1.0, 1.0}).backward();
    EXPECT_EQ(x.grad(), (std::vector<double>{0.0, 1.0}));
}

TEST(Ops, ConvAveragingKernelKeepsConstant) {
    const auto x = Tensor::constant({5, 1}, {2.5, 2.5, 2.5, 2.5, 2.5});
    const auto w = Tensor::constant({1, 1, 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto b = Tensor::constant({1}, {0.0});
    const auto y = conv1d(x, w, b);
    ASSERT_EQ(y.shape(), (Shape{5, 1}));
    for (std::size_t t = 1; t < 4; ++t) EXPECT_NEAR(y.values()[t], 2.5, 1e-15);
    // Zero padding at the borders.
    EXPECT_NEAR(y.values()[0], 2.5 * 2 / 3, 1e-15);
}

TEST(Ops, SigmoidAtZero) {
    EXPECT_DOUBLE_EQ(sigmoid(Tensor::scalar(0.0)).item(), 0.5);
}

TEST(Ops, ShapeMismatchThrows) {
    const auto a = Tensor::constant({2, 3}, std::vector<double>(6, 1.0));
    const auto b = Tensor::constant({2, 3}, std::vector<double>(6, 1.0));
    EXPECT_THROW(matmul(a, b), ArgumentError);
    EXPECT_THROW(add(a, Tensor::constant({3}, {1, 2, 3})), ArgumentError);
    EXPECT_THROW(affine(Tensor::constant({4}, {1, 2, 3, 4}), a, Tensor::constant({2}, {0, 0})), ArgumentError);
    EXPECT_THROW(conv1d(a, Tensor::constant({1, 2, 3}, std::vector<double>(6, 0.0)), Tensor::constant({1}, {0})),
                 ArgumentError);
}

TEST(GradCheck, Matmul) {
    EXPECT_LT(gradient_check({{3, 4}, {4, 2}}, [](const auto& t) { return matmul(t[0], t[1]); }, 1), 1e-6);
}

TEST(GradCheck, AffineVectorAndBatch) {
    EXPECT_LT(gradient_check({{5}, {3, 5}, {3}}, [](const auto& t) { return affine(t[0], t[1], t[2]); }, 2), 1e-6);
    EXPECT_LT(gradient_check({{4, 5}, {3, 5}, {3}}, [](const auto& t) { return affine(t[0], t[1], t[2]); }, 3),
              1e-6);
}

TEST(GradCheck, Conv1d) {
    EXPECT_LT(gradient_check({{6, 3}, {4, 3, 3}, {4}}, [](const auto& t) { return conv1d(t[0], t[1], t[2]); }, 4),
              1e-6);
}

TEST(GradCheck, Elementwise) {
    EXPECT_LT(gradient_check({{7}}, [](const auto& t) { return relu(t[0]); }, 5), 1e-6);
    EXPECT_LT(gradient_check({{7}}, [](const auto& t) { return tanh(t[0]); }, 6), 1e-6);
    EXPECT_LT(gradient_check({{7}}, [](const auto& t) { return sigmoid(t[0]); }, 7), 1e-6);
    EXPECT_LT(gradient_check({{7}}, [](const auto& t) { return scale(t[0], -2.5); }, 8), 1e-6);
    EXPECT_LT(gradient_check({{7}, {7}}, [](const auto& t) { return add(t[0], t[1]); }, 9), 1e-6);
}

TEST(GradCheck, PoolConcatMean) {
    EXPECT_LT(gradient_check({{5, 3}}, [](const auto& t) { return global_avg_pool(t[0]); }, 10), 1e-6);
    EXPECT_LT(gradient_check({{3}, {4}}, [](const auto& t) { return concat(t[0], t[1]); }, 11), 1e-6);
    EXPECT_LT(gradient_check({{2, 3}, {2, 4}}, [](const auto& t) { return concat(t[0], t[1]); }, 12), 1e-6);
    EXPECT_LT(gradient_check({{6}}, [](const auto& t) { return mean(t[0]); }, 13), 1e-6);
}

TEST(GradCheck, BatchNormTrainingAndEval) {
    BatchNormStats stats(3);
    EXPECT_LT(gradient_check({{6, 3}, {3}, {3}},
                             [&](const auto& t) { return batchnorm1d(t[0], t[1], t[2], stats, true); }, 14),
              1e-6);
    BatchNormStats eval_stats(3);
    eval_stats.running_mean = {0.1, -0.2, 0.3};
    eval_stats.running_var = {0.5, 2.0, 1.5};
    EXPECT_LT(gradient_check({{6, 3}, {3}, {3}},
                             [&](const auto& t) { return batchnorm1d(t[0], t[1], t[2], eval_stats, false); }, 15),
              1e-6);
}

TEST(GradCheck, DropoutWithFixedMask) {
    EXPECT_LT(gradient_check({{20}},
                             [](const auto& t) {
                                 Rng mask_rng(99);
                                 return dropout(t[0], 0.3, true, mask_rng);
                             },
                             16),
              1e-6);
}

TEST(Ops, DropoutEvalIsIdentityAndTrainingIsInverted) {
    Rng rng(3);
    const std::vector<double> ones(1000, 1.0);
    const auto x = Tensor::constant({1000}, ones);
    const auto eval = dropout(x, 0.1, false, rng);
    for (double v : eval.values()) EXPECT_EQ(v, 1.0);
    const auto train = dropout(x, 0.1, true, rng);
    for (double v : train.values()) EXPECT_TRUE(v == 0.0 || std::abs(v - 1.0 / 0.9) < 1e-15);
}

TEST(Loss, BceExamples) {
    EXPECT_NEAR(bce_loss(Tensor::constant({2}, {0.5, 0.5}), std::vector<double>{1, 0}).item(), std::log(2.0), 1e-9);
    EXPECT_NEAR(bce_loss(Tensor::constant({1}, {0.9}), std::vector<double>{0}).item(), -std::log(0.1), 1e-9);
    EXPECT_NEAR(bce_loss(Tensor::constant({1}, {1.0 - 1e-12}), std::vector<double>{1}).item(), 0.0, 1e-6);
}

TEST(Loss, BceLengthMismatch) {
    EXPECT_THROW(bce_loss(Tensor::constant({2}, {0.5, 0.5}), std::vector<double>{1}), ArgumentError);
}

TEST(Loss, BceGradient) {
    const std::vector<double> labels{1, 0, 1, 0};
    Rng rng(17);
    auto values = random_values(rng, 4, 0.05, 0.95);
    auto p = Tensor::parameter({4}, values);
    bce_loss(p, labels).backward();
    for (std::size_t i = 0; i < 4; ++i) {
        auto up = values, down = values;
        up[i] += kH;
        down[i] -= kH;
        const double numeric = (bce_loss(Tensor::constant({4}, up), labels).item() -
                                bce_loss(Tensor::constant({4}, down), labels).item()) /
                               (2 * kH);
        EXPECT_NEAR(p.grad()[i], numeric, 1e-6 * std::max(1.0, std::abs(numeric)));
    }
}

TEST(Loss, BceConvexityProbe) {
    for (double y : {0.0, 1.0}) {
        const double at_label =
            bce_loss(Tensor::constant({1}, {y == 1.0 ? 1.0 : 0.0}), std::vector<double>{y}).item();
        for (int k = 1; k < 100; ++k) {
            const double p = k / 100.0;
            EXPECT_LE(at_label, bce_loss(Tensor::constant({1}, {p}), std::vector<double>{y}).item());
        }
    }
}

TEST(Tape, BackwardIsRepeatableBitForBit) {
    Rng rng(5);
    auto w = Tensor::parameter({3, 4}, random_values(rng, 12));
    auto b = Tensor::parameter({3}, random_values(rng, 3));
    const auto x = Tensor::constant({4}, random_values(rng, 4));
    const auto loss = bce_loss(sigmoid(mean(tanh(affine(x, w, b)))), std::vector<double>{1});
    loss.backward();
    const auto g1 = w.grad();
    w.zero_grad();
    loss.backward();
    EXPECT_EQ(g1, w.grad());
}

TEST(Tape, LeafGradientsAccumulate) {
    auto x = Tensor::parameter({1}, {0.3});
    const auto loss = scale(x, 2.0);
    loss.backward();
    loss.backward();
    EXPECT_DOUBLE_EQ(x.grad()[0], 4.0);
    x.zero_grad();
    EXPECT_DOUBLE_EQ(x.grad()[0], 0.0);
}

TEST(Tape, DiamondGraphVisitsEachNodeOnce) {
    auto x = Tensor::parameter({1}, {0.7});
    const auto y = tanh(x);
    const auto z = add(y, y);
    z.backward();
    EXPECT_NEAR(x.grad()[0], 2 * (1 - std::pow(std::tanh(0.7), 2)), 1e-15);
}

TEST(Tape, BackwardNeedsScalar) {
    const auto x = Tensor::parameter({2}, {1, 2});
    EXPECT_THROW(x.backward(), ArgumentError);
}

TEST(ParamShift, CosineExamples) {
    const std::vector<double> zero{0.0}, quarter{kPi / 2};
    EXPECT_NEAR(param_shift_grad(cos_circuit, zero, 0), 0.0, 1e-10);
    EXPECT_NEAR(param_shift_grad(cos_circuit, quarter, 0), -1.0, 1e-10);
    EXPECT_THROW(param_shift_grad(cos_circuit, zero, 1), ArgumentError);
}

TEST(ParamShift, MatchesAnalyticSingleRotation) {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const std::vector<double> a{rng.uniform(-kPi, kPi)};
        EXPECT_NEAR(param_shift_grad(cos_circuit, a, 0), -std::sin(a[0]), 1e-10);
    }
}

TEST(ParamShift, JacobianMatchesFiniteDifferences) {
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_two_qubit_circuit(rng);
        auto inputs = random_values(rng, 2, -kPi, kPi);
        auto params = random_values(rng, 4, -kPi, kPi);
        const auto jac = circuit_jacobian(c, inputs, params);
        const auto base = c.evaluate(inputs, params);
        for (std::size_t o = 0; o < 2; ++o) EXPECT_NEAR(jac.values[o], base[o], 1e-15);
        auto fd = [&](std::vector<double>& v, std::size_t k, std::size_t o) {
            const double orig = v[k];
            v[k] = orig + kH;
            const double up = c.evaluate(inputs, params)[o];
            v[k] = orig - kH;
            const double down = c.evaluate(inputs, params)[o];
            v[k] = orig;
            return (up - down) / (2 * kH);
        };
        for (std::size_t o = 0; o < 2; ++o) {
            for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(jac.d_inputs[o * 2 + k], fd(inputs, k, o), 1e-6);
            for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(jac.d_params[o * 4 + k], fd(params, k, o), 1e-6);
        }
    }
}

TEST(QuantumNode, ZeroQconvNodeHasZeroGradient) {
    const auto layout = circuits::build_qconv_layout(8, 3, true);
    const auto circuit = circuits::build_qconv_circuit(layout);
    auto z = Tensor::parameter({8}, std::vector<double>(8, 0.0));
    auto p = Tensor::parameter({18}, std::vector<double>(18, 0.0));
    const auto q = quantum_node(circuit, z, p);
    EXPECT_NEAR(q.item(), 1.0, 1e-15);
    q.backward();
    for (double g : z.grad()) EXPECT_NEAR(g, 0.0, 1e-10);
    for (double g : p.grad()) EXPECT_NEAR(g, 0.0, 1e-10);
}

TEST(QuantumNode, GradientMatchesFiniteDifferences) {
    Rng rng(33);
    const auto layout = circuits::build_qconv_layout(4, 2, true);
    const auto circuit = circuits::build_qconv_circuit(layout);
    auto zv = random_values(rng, 4, -kPi, kPi);
    auto pv = random_values(rng, layout.parameter_count(), -kPi, kPi);
    auto z = Tensor::parameter({4}, zv);
    auto p = Tensor::parameter({pv.size()}, pv);
    quantum_node(circuit, z, p).backward();
    auto f = [&]() { return circuits::eval_qconv(zv, layout, pv); };
    auto check = [&](std::vector<double>& v, const std::vector<double>& g) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double orig = v[k];
            v[k] = orig + kH;
            const double up = f();
            v[k] = orig - kH;
            const double down = f();
            v[k] = orig;
            EXPECT_NEAR(g[k], (up - down) / (2 * kH), 1e-6);
        }
    };
    check(zv, z.grad());
    check(pv, p.grad());
}

TEST(QuantumNode, ShapeMismatch) {
    const auto layout = circuits::build_qconv_layout(4, 2, true);
    const auto circuit = circuits::build_qconv_circuit(layout);
    EXPECT_THROW(quantum_node(circuit, Tensor::parameter({3}, {0, 0, 0}),
                              Tensor::parameter({12}, std::vector<double>(12, 0.0))),
                 ArgumentError);
}

TEST(QuantumNode, GradientsFiniteOverSweep) {
    Rng rng(34);
    const auto circuit = circuits::build_qnn_circuit(2, 2);
    for (int i = 0; i < 1000; ++i) {
        auto z = Tensor::parameter({2}, random_values(rng, 2, -4 * kPi, 4 * kPi));
        auto p = Tensor::parameter({4}, random_values(rng, 4, -4 * kPi, 4 * kPi));
        const auto q = quantum_node(circuit, z, p);
        mean(q).backward();
        for (double g : z.grad()) ASSERT_TRUE(std::isfinite(g));
        for (double g : p.grad()) ASSERT_TRUE(std::isfinite(g));
    }
}

TEST(Adam, ZeroGradientZeroDecayIsFixedPoint) {
    std::vector<double> w{0.5, -1.5};
    AdamState state;
    AdamConfig cfg;
    cfg.weight_decay = 0.0;
    adamw_step(w, std::vector<double>{0.0, 0.0}, state, cfg);
    EXPECT_EQ(w, (std::vector<double>{0.5, -1.5}));
}

TEST(Adam, QuadraticStepDecreasesMagnitude) {
    std::vector<double> w{1.0};
    AdamState state;
    AdamConfig cfg;
    cfg.lr = 0.1;
    adamw_step(w, std::vector<double>{2.0 * w[0]}, state, cfg);
    EXPECT_LT(std::abs(w[0]), 1.0);
}

TEST(Adam, DecoupledDecayShrinksWeights) {
    std::vector<double> w{2.0, -3.0};
    AdamState state;
    AdamConfig cfg;
    cfg.lr = 0.05;
    cfg.weight_decay = 0.1;
    adamw_step(w, std::vector<double>{0.0, 0.0}, state, cfg);
    EXPECT_NEAR(w[0], 2.0 * (1 - 0.05 * 0.1), 1e-15);
    EXPECT_NEAR(w[1], -3.0 * (1 - 0.05 * 0.1), 1e-15);
}

TEST(Adam, BiasCorrectedFirstStepHasLrMagnitude) {
    std::vector<double> w{0.0, 0.0};
    AdamState state;
    AdamConfig cfg;
    cfg.weight_decay = 0.0;
    adamw_step(w, std::vector<double>{3.0, -0.2}, state, cfg);
    EXPECT_NEAR(w[0], -cfg.lr, 1e-9);
    EXPECT_NEAR(w[1], cfg.lr, 1e-9);
}

TEST(Parameters, BindCopiesAndGathers) {
    ParameterSet set;
    set.add("w", {2}, {1.0, 2.0});
    set.add("b", {1}, {3.0});
    EXPECT_THROW(set.add("w", {1}, {0.0}), ArgumentError);
    auto leaves = set.bind();
    leaves[0].mutable_values()[0] = 10.0;
    EXPECT_EQ(set.group(0).values[0], 1.0);
    add(mean(leaves[0]), mean(leaves[1])).backward();
    EXPECT_EQ(ParameterSet::gather_grads(leaves), (std::vector<double>{0.5, 0.5, 1.0}));
    set.assign(std::vector<double>{4, 5, 6});
    EXPECT_EQ(set.flatten(), (std::vector<double>{4, 5, 6}));
}
