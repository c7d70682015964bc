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

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <vector>

#include "qtcnn/autodiff/loss.hpp"
#include "qtcnn/common/errors.hpp"
#include "qtcnn/common/rng.hpp"
#include "qtcnn/models/model.hpp"

using namespace qtcnn;
using namespace qtcnn::models;
using datapipe::SampleSet;

namespace {

constexpr double kPi = std::numbers::pi;

// N samples of T x F uniform noise; label from `label_of(flat row)`.
template <class LabelFn>
SampleSet make_set(std::size_t n, std::size_t T, std::size_t F, std::uint64_t seed, LabelFn label_of) {
    Rng rng(seed);
    SampleSet s;
    s.split = "train";
    s.seq_len = T;
    s.n_features = F;
    for (std::size_t f = 0; f < F; ++f) s.feature_names.push_back("f" + std::to_string(f));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> w(T * F);
        for (double& v : w) v = rng.uniform(-1.0, 1.0);
        s.sequences.insert(s.sequences.end(), w.begin(), w.end());
        s.labels.push_back(static_cast<std::int8_t>(label_of(std::span<const double>(w).subspan((T - 1) * F, F))));
        s.keys.push_back({Date(static_cast<std::int32_t>(i / 10)), static_cast<std::int64_t>(i % 10)});
        s.targets.push_back(0.0);
        s.tradable.push_back(1);
        for (std::size_t r = 0; r < datapipe::kRawColumns; ++r) s.raw_last.push_back(rng.uniform(0.01, 0.1));
    }
    return s;
}

SampleSet separable_set(std::size_t n, std::size_t T, std::size_t F, std::uint64_t seed) {
    return make_set(n, T, F, seed, [](std::span<const double> x) { return x[0] + 0.5 * x[1] > 0 ? 1 : 0; });
}

ModelConfig small_config(ModelKind kind, int n_qubits, std::size_t T, std::size_t F) {
    ModelConfig c = default_model_config(kind);
    c.n_qubits = n_qubits;
    c.seq_len = T;
    c.n_features = F;
    c.seed = 11;
    return c;
}

void zero_all(Model& m) {
    for (std::size_t g = 0; g < m.params().groups().size(); ++g) {
        auto& v = m.params().group(g).values;
        std::fill(v.begin(), v.end(), 0.0);
    }
}

double accuracy(const std::vector<double>& p, const SampleSet& s) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < p.size(); ++i) ok += (p[i] > 0.5) == (s.labels[i] == 1);
    return static_cast<double>(ok) / static_cast<double>(p.size());
}

// BCE over `set` as a function of the flat parameters, for finite differences.
double loss_at(const Model& m, const SampleSet& set) {
    double total = 0.0;
    const auto leaves = m.constant_leaves();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const double label = set.labels[i];
        total += autodiff::bce_loss(m.forward_sample(leaves, set.window(i)), std::span<const double>(&label, 1)).item();
    }
    return total / static_cast<double>(set.size());
}

// Worst relative error of the analytic per-sample-model gradient against
// central differences, over every parameter.
double model_gradient_error(Model& m, const SampleSet& set, double h) {
    std::vector<double> analytic(m.params().total_size(), 0.0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto leaves = m.params().bind();
        const double label = set.labels[i];
        autodiff::bce_loss(m.forward_sample(leaves, set.window(i)), std::span<const double>(&label, 1)).backward();
        const auto g = autodiff::ParameterSet::gather_grads(leaves);
        for (std::size_t k = 0; k < g.size(); ++k) analytic[k] += g[k] / static_cast<double>(set.size());
    }
    auto flat = m.params().flatten();
    double worst = 0.0;
    for (std::size_t k = 0; k < flat.size(); ++k) {
        const double orig = flat[k];
        flat[k] = orig + h;
        m.params().assign(flat);
        const double up = loss_at(m, set);
        flat[k] = orig - h;
        m.params().assign(flat);
        const double down = loss_at(m, set);
        flat[k] = orig;
        m.params().assign(flat);
        const double numeric = (up - down) / (2 * h);
        worst = std::max(worst, std::abs(analytic[k] - numeric) / std::max(1.0, std::abs(numeric)));
    }
    return worst;
}

}  // namespace

TEST(Pca, DiagonalPointsGiveDiagonalDirection) {
    const std::vector<double> x{1, 1, -1, -1, 2, 2, -2, -2};
    const auto pca = fit_pca(x, 4, 2, 1);
    EXPECT_NEAR(pca.components[0], std::sqrt(0.5), 1e-12);
    EXPECT_NEAR(pca.components[1], std::sqrt(0.5), 1e-12);
}

TEST(Pca, ComponentsOrthonormalAndSorted) {
    Rng rng(1);
    std::vector<double> x(200 * 5);
    for (double& v : x) v = rng.normal();
    const auto pca = fit_pca(x, 200, 5, 5);
    for (std::size_t a = 0; a < 5; ++a) {
        for (std::size_t b = 0; b < 5; ++b) {
            double dot = 0.0;
            for (std::size_t j = 0; j < 5; ++j) dot += pca.components[a * 5 + j] * pca.components[b * 5 + j];
            EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-8);
        }
        if (a > 0) {
            EXPECT_GE(pca.eigenvalues[a - 1], pca.eigenvalues[a]);
        }
    }
}

TEST(Pca, FullRankBackProjectionReconstructs) {
    Rng rng(2);
    std::vector<double> x(50 * 4);
    for (std::size_t i = 0; i < 50; ++i) {
        const double a = rng.normal(), b = rng.normal();
        x[i * 4] = 3 * a + 1;
        x[i * 4 + 1] = a - b;
        x[i * 4 + 2] = rng.normal(0, 0.1);
        x[i * 4 + 3] = 2 * b - 5;
    }
    const auto pca = fit_pca(x, 50, 4, 4);
    for (std::size_t i = 0; i < 50; ++i) {
        const auto row = std::span<const double>(x).subspan(i * 4, 4);
        const auto z = pca.transform(row);
        const auto s = pca.standardize(row);
        for (std::size_t j = 0; j < 4; ++j) {
            double back = 0.0;
            for (std::size_t c = 0; c < 4; ++c) back += pca.components[c * 4 + j] * z[c];
            EXPECT_NEAR(back, s[j], 1e-8);
        }
    }
}

TEST(Pca, Guards) {
    const std::vector<double> x{1, 2, 3, 4};
    EXPECT_THROW(fit_pca(x, 2, 2, 2), DataError);
    EXPECT_THROW(fit_pca(x, 4, 1, 2), ArgumentError);
    PcaModel unfitted;
    EXPECT_THROW(unfitted.transform(x), StateError);
}

TEST(Pca, ZeroStdColumnGetsUnitScale) {
    const std::vector<double> x{1, 5, 2, 5, 3, 5, 4, 5};
    const auto pca = fit_pca(x, 4, 2, 1);
    EXPECT_EQ(pca.stds[1], 1.0);
}

TEST(MinMax, Examples) {
    MinMaxMap m;
    m.mins = {-2};
    m.maxs = {2};
    m.fit_rows = 1;
    EXPECT_NEAR(m.apply(std::vector<double>{0.0})[0], kPi / 2, 1e-15);
    EXPECT_NEAR(m.apply(std::vector<double>{-2.0})[0], 0.0, 1e-15);
    EXPECT_NEAR(m.apply(std::vector<double>{2.0})[0], kPi, 1e-15);
    EXPECT_NEAR(m.apply(std::vector<double>{3.0})[0], kPi, 1e-15);
    EXPECT_THROW(MinMaxMap{}.apply(std::vector<double>{0.0}), StateError);
}

TEST(MinMax, FittedTrainingValuesInRangeAndConstantMapsToHalfPi) {
    Rng rng(3);
    std::vector<double> x(40);
    for (std::size_t i = 0; i < 20; ++i) {
        x[i * 2] = rng.normal();
        x[i * 2 + 1] = 7.0;
    }
    const auto m = fit_minmax(x, 20, 2);
    for (std::size_t i = 0; i < 20; ++i) {
        const auto phi = m.apply(std::span<const double>(x).subspan(i * 2, 2));
        EXPECT_GE(phi[0], 0.0);
        EXPECT_LE(phi[0], kPi);
        EXPECT_DOUBLE_EQ(phi[1], kPi / 2);
    }
}

TEST(Momentum, Examples) {
    EXPECT_NEAR(momentum_vol_score(0.1, 0.2, 0.05), 3.0, 1e-6);
    EXPECT_EQ(momentum_vol_score(0.0, 0.0, 0.3), 0.0);
    const double s = momentum_vol_score(0.1, 0.1, 0.0);
    EXPECT_TRUE(std::isfinite(s));
    EXPECT_NEAR(s, 1e8, 1.0);
}

TEST(Config, DefaultsFollowTrainingTable) {
    const auto q = default_model_config(ModelKind::Qtcnn);
    EXPECT_EQ(q.epochs, 50);
    EXPECT_EQ(q.batch_size, 128u);
    EXPECT_DOUBLE_EQ(q.lr, 1e-3);
    EXPECT_EQ(q.optimizer, OptimizerKind::AdamW);
    EXPECT_EQ(q.n_qubits, 8);
    EXPECT_EQ(q.depth, 3);
    EXPECT_EQ(q.seq_len, 20u);
    const auto n = default_model_config(ModelKind::Qnn);
    EXPECT_EQ(n.batch_size, 512u);
    EXPECT_DOUBLE_EQ(n.lr, 2e-3);
    EXPECT_EQ(n.optimizer, OptimizerKind::Adam);
    EXPECT_EQ(n.depth, 2);
    EXPECT_EQ(default_model_config(ModelKind::Qcnn).batch_size, 128u);
}

TEST(Config, UnknownKindListsSupported) {
    try {
        parse_model_kind("lstm");
        FAIL();
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (ModelKind k : all_model_kinds()) EXPECT_NE(msg.find(std::string(model_kind_name(k))), std::string::npos);
    }
}

TEST(TemporalEncoder, ZeroInputZeroBiasGivesZero) {
    Model m(small_config(ModelKind::Qtcnn, 8, 20, 18));
    for (const char* b : {"enc.b1", "enc.b2", "enc.bp"}) {
        for (std::size_t g = 0; g < m.params().groups().size(); ++g) {
            auto& grp = m.params().group(g);
            if (grp.name == b) std::fill(grp.values.begin(), grp.values.end(), 0.0);
        }
    }
    const auto leaves = m.constant_leaves();
    const EncoderTensors enc{leaves[0], leaves[1], leaves[2], leaves[3], leaves[4], leaves[5]};
    const auto z = temporal_encode(Tensor::constant({20, 18}, std::vector<double>(360, 0.0)), enc);
    ASSERT_EQ(z.size(), 8u);
    for (double v : z.values()) EXPECT_EQ(v, 0.0);
}

TEST(TemporalEncoder, OutputBoundedByPi) {
    Model m(small_config(ModelKind::Qtcnn, 4, 6, 5));
    auto flat = m.params().flatten();
    for (double& v : flat) v *= 50.0;
    m.params().assign(flat);
    const auto leaves = m.constant_leaves();
    const EncoderTensors enc{leaves[0], leaves[1], leaves[2], leaves[3], leaves[4], leaves[5]};
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> x(30);
        for (double& v : x) v = rng.uniform(-5, 5);
        const auto z = temporal_encode(Tensor::constant({6, 5}, x), enc);
        for (double v : z.values()) {
            EXPECT_GE(v, -kPi);
            EXPECT_LE(v, kPi);
        }
    }
}

TEST(TemporalEncoder, AveragingKernelOnConstantInput) {
    // One channel in, one out, kernel [1,1,1]/3, zero bias: interior outputs
    // equal the constant, the two border rows see 2/3 of it, and GAP is their
    // mean.
    const std::size_t T = 6;
    const double c = 0.8;
    const auto x = Tensor::constant({T, 1}, std::vector<double>(T, c));
    const auto w = Tensor::constant({1, 1, 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    const auto b = Tensor::constant({1}, {0.0});
    const auto h = autodiff::conv1d(x, w, b);
    for (std::size_t t = 1; t + 1 < T; ++t) EXPECT_NEAR(h.values()[t], c, 1e-15);
    const double expected_gap = (c * static_cast<double>(T - 2) + 2 * (2 * c / 3)) / static_cast<double>(T);
    EXPECT_NEAR(autodiff::global_avg_pool(autodiff::relu(h)).item(), expected_gap, 1e-15);
}

TEST(Qtcnn, ZeroParametersGiveHalf) {
    Model m(small_config(ModelKind::Qtcnn, 8, 20, 18));
    zero_all(m);
    Rng rng(5);
    std::vector<double> x(360);
    for (double& v : x) v = rng.normal();
    const auto leaves = m.constant_leaves();
    EXPECT_NEAR(m.forward_sample(leaves, x).item(), 0.5, 1e-15);
    // q itself is +1 on the zero circuit.
    const std::vector<double> z(8, 0.0), theta(18, 0.0);
    EXPECT_NEAR(circuits::eval_qconv(z, m.layout(), theta), 1.0, 1e-15);
}

TEST(Qtcnn, ProbabilitiesInOpenUnitInterval) {
    Model m(small_config(ModelKind::Qtcnn, 4, 5, 3));
    auto set = separable_set(30, 5, 3, 6);
    for (double p : m.predict(set)) {
        EXPECT_GT(p, 0.0);
        EXPECT_LT(p, 1.0);
    }
}

TEST(Qtcnn, GroupsAndSharedLayout) {
    Model m(small_config(ModelKind::Qtcnn, 8, 20, 18));
    EXPECT_EQ(m.params().find("qconv.theta")->values.size(), 18u);
    EXPECT_EQ(m.params().find("head.w1")->shape, (autodiff::Shape{64, 9}));
    EXPECT_EQ(m.params().find("enc.w1")->shape, (autodiff::Shape{32, 18, 3}));
    Model q(small_config(ModelKind::Qcnn, 8, 20, 18));
    EXPECT_EQ(q.params().find("qconv.theta")->values.size(), 42u);
    EXPECT_EQ(q.params().find("enc.w1"), nullptr);
}

TEST(Qtcnn, EndToEndGradientMatchesFiniteDifferences) {
    Model m(small_config(ModelKind::Qtcnn, 2, 4, 3));
    // Larger weights so every ReLU path is exercised.
    auto flat = m.params().flatten();
    for (double& v : flat) v *= 3.0;
    m.params().assign(flat);
    const auto set = separable_set(3, 4, 3, 7);
    EXPECT_LT(model_gradient_error(m, set, 1e-5), 1e-5);
}

TEST(Qcnn, MatchesManualPipelineAndSharedReplication) {
    const auto set = separable_set(60, 2, 10, 8);
    Model unshared(small_config(ModelKind::Qcnn, 8, 2, 10));
    unshared.fit_preprocessing(set);
    const auto shared_layout = circuits::build_qconv_layout(8, 3, true);
    Rng rng(9);
    std::vector<double> theta(18);
    for (double& v : theta) v = rng.uniform(-kPi, kPi);
    const auto rep = circuits::replicate_shared_params(shared_layout, theta);
    for (std::size_t g = 0; g < unshared.params().groups().size(); ++g)
        if (unshared.params().group(g).name == "qconv.theta") {
            unshared.params().group(g).values = rep;
        }
    const auto leaves = unshared.constant_leaves();
    for (std::size_t i = 0; i < 5; ++i) {
        const auto z = unshared.pca().transform(set.flat(i));
        const double q_shared = circuits::eval_qconv(z, shared_layout, theta);
        const double q_unshared = unshared.circuit()->evaluate(z, rep)[0];
        EXPECT_NEAR(q_shared, q_unshared, 1e-10);
        const double p = unshared.forward_sample(leaves, set.window(i)).item();
        EXPECT_GT(p, 0.0);
        EXPECT_LT(p, 1.0);
    }
}

TEST(Qcnn, UnfittedPcaIsStateError) {
    Model m(small_config(ModelKind::Qcnn, 2, 2, 3));
    const auto leaves = m.constant_leaves();
    EXPECT_THROW(m.forward_sample(leaves, std::vector<double>(6, 0.0)), StateError);
}

TEST(Qcnn, GradientMatchesFiniteDifferences) {
    const auto set = separable_set(20, 2, 3, 10);
    Model m(small_config(ModelKind::Qcnn, 2, 2, 3));
    m.fit_preprocessing(set);
    EXPECT_LT(model_gradient_error(m, set.subset(std::vector<std::size_t>{0, 1, 2}), 1e-5), 1e-6);
}

TEST(Qnn, DegenerateReadouts) {
    Model m(small_config(ModelKind::Qnn, 3, 1, 4));
    const auto set = separable_set(30, 1, 4, 11);
    m.fit_preprocessing(set);
    auto& groups = m.params();
    for (std::size_t g = 0; g < groups.groups().size(); ++g) {
        auto& grp = groups.group(g);
        if (grp.name == "readout.w") std::fill(grp.values.begin(), grp.values.end(), 0.0);
        if (grp.name == "readout.b") grp.values = {0.3};
    }
    auto leaves = m.constant_leaves();
    for (std::size_t i = 0; i < 5; ++i)
        EXPECT_NEAR(m.forward_sample(leaves, set.window(i)).item(), 1 / (1 + std::exp(-0.3)), 1e-15);

    // phi = 0 via a map whose minimum sits above every projection.
    MinMaxMap above;
    above.mins.assign(3, 1e6);
    above.maxs.assign(3, 1e6 + 1);
    above.fit_rows = 1;
    m.set_minmax(above);
    for (std::size_t g = 0; g < groups.groups().size(); ++g) {
        auto& grp = groups.group(g);
        if (grp.name == "qnn.theta") std::fill(grp.values.begin(), grp.values.end(), 0.0);
        if (grp.name == "readout.w") std::fill(grp.values.begin(), grp.values.end(), 1.0);
        if (grp.name == "readout.b") grp.values = {0.0};
    }
    leaves = m.constant_leaves();
    EXPECT_NEAR(m.forward_sample(leaves, set.window(0)).item(), 1 / (1 + std::exp(-3.0)), 1e-12);
}

TEST(Qnn, GradientMatchesFiniteDifferences) {
    const auto set = separable_set(20, 1, 3, 12);
    Model m(small_config(ModelKind::Qnn, 2, 1, 3));
    m.fit_preprocessing(set);
    EXPECT_LT(model_gradient_error(m, set.subset(std::vector<std::size_t>{0, 1, 2, 3}), 1e-5), 1e-6);
}

TEST(Qnn, UnfittedMapIsStateError) {
    Model m(small_config(ModelKind::Qnn, 2, 1, 3));
    EXPECT_THROW(m.forward_sample(m.constant_leaves(), std::vector<double>(3, 0.0)), StateError);
}

TEST(Mlp, EvalDeterministicAndZeroWeightsGiveHalf) {
    Model m(small_config(ModelKind::Mlp, 8, 3, 6));
    const auto set = separable_set(40, 3, 6, 13);
    EXPECT_EQ(m.predict(set), m.predict(set));
    zero_all(m);
    for (double p : m.predict(set)) EXPECT_DOUBLE_EQ(p, 0.5);
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
    Model m(small_config(ModelKind::Mlp, 8, 1, 4));
    const auto set = separable_set(6, 1, 4, 14);
    std::vector<double> rows, labels;
    for (std::size_t i = 0; i < set.size(); ++i) {
        rows.insert(rows.end(), set.flat(i).begin(), set.flat(i).end());
        labels.push_back(set.labels[i]);
    }
    auto loss = [&](const std::vector<autodiff::Tensor>& leaves) {
        Rng drop(77);
        return autodiff::bce_loss(m.forward_batch(leaves, rows, set.size(), true, drop), labels);
    };
    auto leaves = m.params().bind();
    loss(leaves).backward();
    const auto analytic = autodiff::ParameterSet::gather_grads(leaves);
    auto flat = m.params().flatten();
    // Spot-check a spread of coordinates across every group.
    double worst = 0.0;
    for (std::size_t k = 0; k < flat.size(); k += 97) {
        const double orig = flat[k];
        flat[k] = orig + 1e-5;
        m.params().assign(flat);
        const double up = loss(m.constant_leaves()).item();
        flat[k] = orig - 1e-5;
        m.params().assign(flat);
        const double down = loss(m.constant_leaves()).item();
        flat[k] = orig;
        m.params().assign(flat);
        const double numeric = (up - down) / 2e-5;
        worst = std::max(worst, std::abs(analytic[k] - numeric) / std::max(1.0, std::abs(numeric)));
    }
    EXPECT_LT(worst, 1e-5);
}

TEST(Train, SeparableSetLearnedByMlp) {
    auto set = separable_set(400, 1, 2, 15);
    auto cfg = small_config(ModelKind::Mlp, 8, 1, 2);
    cfg.epochs = 30;
    cfg.batch_size = 32;
    Model m(cfg);
    const auto curve = train(m, set);
    ASSERT_EQ(curve.size(), 30u);
    EXPECT_LT(curve.back(), curve.front());
    EXPECT_GT(accuracy(predict_scores(m, set), set), 0.9);
}

TEST(Train, SeparableSetLearnedByQnn) {
    auto set = separable_set(300, 1, 2, 16);
    auto cfg = small_config(ModelKind::Qnn, 2, 1, 2);
    cfg.epochs = 40;
    cfg.batch_size = 16;
    cfg.lr = 0.05;
    Model m(cfg);
    const auto curve = train(m, set);
    EXPECT_LT(curve.back(), curve.front());
    EXPECT_GT(accuracy(predict_scores(m, set), set), 0.9);
}

TEST(Train, SeparableSetLearnedByQtcnn) {
    auto set = separable_set(200, 2, 2, 17);
    auto cfg = small_config(ModelKind::Qtcnn, 2, 2, 2);
    cfg.epochs = 30;
    cfg.batch_size = 16;
    cfg.lr = 0.01;
    Model m(cfg);
    const auto curve = train(m, set);
    EXPECT_LT(curve.back(), curve.front());
    EXPECT_GT(accuracy(predict_scores(m, set), set), 0.9);
}

TEST(Train, ZeroEpochsLeavesParameters) {
    auto set = separable_set(50, 2, 3, 18);
    auto cfg = small_config(ModelKind::Qtcnn, 2, 2, 3);
    cfg.epochs = 0;
    Model m(cfg);
    const auto before = m.params().flatten();
    EXPECT_TRUE(train(m, set).empty());
    EXPECT_EQ(m.params().flatten(), before);
    EXPECT_TRUE(m.trained());
}

TEST(Train, DeterministicAcrossRunsAndWorkerCounts) {
    auto set = separable_set(60, 3, 3, 19);
    auto cfg = small_config(ModelKind::Qtcnn, 2, 3, 3);
    cfg.epochs = 3;
    cfg.batch_size = 8;
    Model a(cfg), b(cfg), c(cfg);
    const auto ca = train(a, set, 1);
    const auto cb = train(b, set, 1);
    const auto cc = train(c, set, 3);
    EXPECT_EQ(ca, cb);
    EXPECT_EQ(ca, cc);
    EXPECT_EQ(a.params().flatten(), b.params().flatten());
    EXPECT_EQ(a.params().flatten(), c.params().flatten());
}

TEST(Train, SingleClassIsDataError) {
    auto set = make_set(20, 1, 3, 20, [](std::span<const double>) { return 1; });
    Model m(small_config(ModelKind::Mlp, 8, 1, 3));
    EXPECT_THROW(train(m, set), DataError);
}

TEST(Train, PreprocessingFittedOnTrainOnly) {
    // Train and test drawn from shifted distributions: refitting on the union
    // must move the statistics.
    auto tr = separable_set(80, 1, 4, 21);
    auto te = separable_set(40, 1, 4, 22);
    for (double& v : te.sequences) v = 3.0 * v + 2.0;
    auto cfg = small_config(ModelKind::Qnn, 2, 1, 4);
    cfg.epochs = 1;
    Model m(cfg);
    train(m, tr);
    EXPECT_EQ(m.pca().fit_rows, tr.size());
    EXPECT_EQ(m.minmax().fit_rows, tr.size());
    std::vector<double> all;
    for (const auto* s : {&tr, &te})
        for (std::size_t i = 0; i < s->size(); ++i) all.insert(all.end(), s->flat(i).begin(), s->flat(i).end());
    const auto refit = fit_pca(all, tr.size() + te.size(), 4, 2);
    double diff = 0.0;
    for (std::size_t j = 0; j < 4; ++j) diff += std::abs(refit.means[j] - m.pca().means[j]);
    EXPECT_GT(diff, 0.1);
}

TEST(Predict, ContractAndPurity) {
    auto set = separable_set(20, 2, 3, 23);
    // Duplicate sample 0 into slot 1.
    std::copy(set.window(0).begin(), set.window(0).end(), set.sequences.begin() + 6);
    auto cfg = small_config(ModelKind::Qtcnn, 2, 2, 3);
    Model m(cfg);
    EXPECT_THROW(predict_scores(m, set), StateError);
    m.set_trained(true);
    const auto s = predict_scores(m, set);
    EXPECT_EQ(s.size(), set.size());
    EXPECT_EQ(s[0], s[1]);
}

TEST(Predict, MomentumNeedsNoTraining) {
    auto set = separable_set(10, 1, 3, 24);
    Model m(default_model_config(ModelKind::Momentum));
    EXPECT_TRUE(m.trained());
    const auto s = predict_scores(m, set);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto r = set.raw(i);
        EXPECT_DOUBLE_EQ(s[i], momentum_vol_score(r[0], r[1], r[2]));
    }
}

TEST(Checkpoint, RoundTripPreservesPredictions) {
    const auto dir = std::filesystem::temp_directory_path() / "qtcnn_models_test";
    std::filesystem::create_directories(dir);
    for (ModelKind kind : {ModelKind::Qtcnn, ModelKind::Qcnn, ModelKind::Qnn, ModelKind::Mlp}) {
        auto set = separable_set(40, 2, 4, 25);
        auto cfg = small_config(kind, 2, 2, 4);
        cfg.epochs = 2;
        cfg.batch_size = 16;
        Model m(cfg);
        train(m, set);
        const auto path = dir / (std::string(model_kind_name(kind)) + ".json");
        save_checkpoint(m, path);
        const Model back = load_checkpoint(path);
        EXPECT_EQ(back.params().flatten(), m.params().flatten());
        EXPECT_EQ(back.loss_curve(), m.loss_curve());
        EXPECT_EQ(predict_scores(back, set), predict_scores(m, set));
    }
    EXPECT_THROW(load_checkpoint(dir / "missing.json"), IoError);
}
