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


#include "qtcnn/models/model.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>

#include "json.hpp"
#include "qtcnn/autodiff/loss.hpp"
#include "qtcnn/autodiff/optim.hpp"
#include "qtcnn/autodiff/param_shift.hpp"
#include "qtcnn/common/errors.hpp"

namespace qtcnn::models {

namespace ad = qtcnn::autodiff;
using datapipe::SampleSet;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuantumInitBound = 0.1;
constexpr std::size_t kPredictChunk = 1024;

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

// Runs body(i) for i in [0, n) across threads and rethrows the first
// exception on the calling thread.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
    std::exception_ptr error;
    std::mutex mu;
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

Tensor temporal_encode(const Tensor& x, const EncoderTensors& p) {
    if (x.rank() != 2) throw ArgumentError("temporal_encode input must be (T x F)");
    Tensor h = ad::relu(ad::conv1d(x, p.w1, p.b1));
    h = ad::relu(ad::conv1d(h, p.w2, p.b2));
    h = ad::global_avg_pool(h);
    return ad::scale(ad::tanh(ad::affine(h, p.wp, p.bp)), kPi);
}

Tensor hybrid_head(const Tensor& q, const Tensor& z, const HeadTensors& p) {
    Tensor h = ad::concat(q, z);
    h = ad::relu(ad::affine(h, p.w1, p.b1));
    h = ad::relu(ad::affine(h, p.w2, p.b2));
    return ad::sigmoid(ad::affine(h, p.w3, p.b3));
}

double momentum_vol_score(double mom5, double mom20, double vol20) {
    return (0.5 * mom5 + 0.5 * mom20) / (vol20 + kMomentumEps);
}

Model::Model(ModelConfig config) : config_(std::move(config)) {
    config_.validate();
    if (config_.kind == ModelKind::Momentum) return;
    if (config_.n_features == 0) throw ConfigError("model needs n_features > 0");

    Rng rng = Rng::stream(config_.seed, "init");
    const std::size_t F = config_.n_features;
    const std::size_t nq = static_cast<std::size_t>(config_.n_qubits);
    const std::size_t C = kEncoderChannels, K = kEncoderKernel;
    auto bound = [](std::size_t fan_in) { return std::sqrt(1.0 / static_cast<double>(fan_in)); };

    switch (config_.kind) {
        case ModelKind::Qtcnn:
        case ModelKind::Qcnn: {
            const bool shared = config_.kind == ModelKind::Qtcnn;
            layout_ = circuits::build_qconv_layout(config_.n_qubits, config_.depth, shared);
            circuit_ = circuits::build_qconv_circuit(layout_);
            if (shared) {
                add_uniform("enc.w1", {C, F, K}, bound(F * K), rng);
                add_uniform("enc.b1", {C}, bound(F * K), rng);
                add_uniform("enc.w2", {C, C, K}, bound(C * K), rng);
                add_uniform("enc.b2", {C}, bound(C * K), rng);
                add_uniform("enc.wp", {nq, C}, bound(C), rng);
                add_uniform("enc.bp", {nq}, bound(C), rng);
            }
            add_uniform("qconv.theta", {layout_.parameter_count()}, kQuantumInitBound, rng);
            build_head(nq, rng);
            break;
        }
        case ModelKind::Qnn: {
            circuit_ = circuits::build_qnn_circuit(config_.n_qubits, config_.depth);
            add_uniform("qnn.theta", {static_cast<std::size_t>(config_.depth) * nq}, kQuantumInitBound, rng);
            add_uniform("readout.w", {1, nq}, bound(nq), rng);
            add_uniform("readout.b", {1}, bound(nq), rng);
            break;
        }
        case ModelKind::Mlp: {
            std::size_t in = F;
            for (std::size_t l = 0; l < 3; ++l) {
                const std::size_t out = kMlpHidden[l];
                const std::string p = "mlp." + std::to_string(l + 1);
                add_uniform(p + ".w", {out, in}, bound(in), rng);
                add_uniform(p + ".b", {out}, bound(in), rng);
                add_group(p + ".gamma", {out}, std::vector<double>(out, 1.0));
                add_group(p + ".beta", {out}, std::vector<double>(out, 0.0));
                bn_.emplace_back(out);
                in = out;
            }
            add_uniform("mlp.out.w", {1, in}, bound(in), rng);
            add_uniform("mlp.out.b", {1}, bound(in), rng);
            break;
        }
        case ModelKind::Momentum:
            break;
    }
}

void Model::build_head(std::size_t z_width, Rng& rng) {
    auto bound = [](std::size_t fan_in) { return std::sqrt(1.0 / static_cast<double>(fan_in)); };
    const std::size_t in = z_width + 1;
    add_uniform("head.w1", {kHeadHidden1, in}, bound(in), rng);
    add_uniform("head.b1", {kHeadHidden1}, bound(in), rng);
    add_uniform("head.w2", {kHeadHidden2, kHeadHidden1}, bound(kHeadHidden1), rng);
    add_uniform("head.b2", {kHeadHidden2}, bound(kHeadHidden1), rng);
    add_uniform("head.w3", {1, kHeadHidden2}, bound(kHeadHidden2), rng);
    add_uniform("head.b3", {1}, bound(kHeadHidden2), rng);
}

std::size_t Model::add_group(const std::string& name, ad::Shape shape, std::vector<double> values) {
    const std::size_t idx = params_.add(name, std::move(shape), std::move(values));
    index_[name] = idx;
    return idx;
}

void Model::add_uniform(const std::string& name, ad::Shape shape, double bound, Rng& rng) {
    std::vector<double> v(ad::shape_size(shape));
    for (double& x : v) x = rng.uniform(-bound, bound);
    add_group(name, std::move(shape), std::move(v));
}

std::vector<std::string> Model::group_names() const {
    std::vector<std::string> out;
    for (const auto& g : params_.groups()) out.push_back(g.name);
    return out;
}

bool Model::per_sample() const { return config_.kind != ModelKind::Mlp; }

const Tensor& Model::leaf(std::span<const Tensor> leaves, const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end() || it->second >= leaves.size()) {
        throw ArgumentError("missing parameter leaf '" + name + "'");
    }
    return leaves[it->second];
}

std::vector<double> Model::flat_input(std::span<const double> window) const {
    const std::size_t F = config_.n_features;
    return pca_.transform(window.subspan(window.size() - F, F));
}

void Model::fit_preprocessing(const SampleSet& train) {
    if (config_.kind != ModelKind::Qcnn && config_.kind != ModelKind::Qnn) return;
    const auto idx = train.labeled_indices();
    const std::size_t F = config_.n_features;
    std::vector<double> rows;
    rows.reserve(idx.size() * F);
    for (std::size_t i : idx) {
        const auto f = train.flat(i);
        rows.insert(rows.end(), f.begin(), f.end());
    }
    pca_ = fit_pca(rows, idx.size(), F, static_cast<std::size_t>(config_.n_qubits));
    if (config_.kind == ModelKind::Qnn) {
        std::vector<double> projected;
        projected.reserve(idx.size() * pca_.n_components);
        for (std::size_t r = 0; r < idx.size(); ++r) {
            const auto z = pca_.transform(std::span<const double>(rows).subspan(r * F, F));
            projected.insert(projected.end(), z.begin(), z.end());
        }
        minmax_ = fit_minmax(projected, idx.size(), pca_.n_components);
    }
}

Tensor Model::forward_sample(std::span<const Tensor> leaves, std::span<const double> window) const {
    const std::size_t T = config_.seq_len, F = config_.n_features;
    if (window.size() != T * F) throw ArgumentError("window is not seq_len x n_features");
    switch (config_.kind) {
        case ModelKind::Qtcnn: {
            const EncoderTensors enc{leaf(leaves, "enc.w1"), leaf(leaves, "enc.b1"), leaf(leaves, "enc.w2"),
                                     leaf(leaves, "enc.b2"), leaf(leaves, "enc.wp"), leaf(leaves, "enc.bp")};
            const Tensor x = Tensor::constant({T, F}, std::vector<double>(window.begin(), window.end()));
            const Tensor z = temporal_encode(x, enc);
            const Tensor q = ad::quantum_node(*circuit_, z, leaf(leaves, "qconv.theta"));
            const HeadTensors head{leaf(leaves, "head.w1"), leaf(leaves, "head.b1"), leaf(leaves, "head.w2"),
                                   leaf(leaves, "head.b2"), leaf(leaves, "head.w3"), leaf(leaves, "head.b3")};
            return hybrid_head(q, z, head);
        }
        case ModelKind::Qcnn: {
            const auto zv = flat_input(window);
            const Tensor z = Tensor::constant({zv.size()}, zv);
            const Tensor q = ad::quantum_node(*circuit_, z, leaf(leaves, "qconv.theta"));
            const HeadTensors head{leaf(leaves, "head.w1"), leaf(leaves, "head.b1"), leaf(leaves, "head.w2"),
                                   leaf(leaves, "head.b2"), leaf(leaves, "head.w3"), leaf(leaves, "head.b3")};
            return hybrid_head(q, z, head);
        }
        case ModelKind::Qnn: {
            const auto phi = minmax_.apply(flat_input(window));
            const Tensor x = Tensor::constant({phi.size()}, phi);
            const Tensor e = ad::quantum_node(*circuit_, x, leaf(leaves, "qnn.theta"));
            return ad::sigmoid(ad::affine(e, leaf(leaves, "readout.w"), leaf(leaves, "readout.b")));
        }
        case ModelKind::Mlp:
        case ModelKind::Momentum:
            break;
    }
    throw StateError("forward_sample is not defined for model '" + std::string(model_kind_name(config_.kind)) +
                     "'");
}

Tensor Model::forward_batch(std::span<const Tensor> leaves, std::span<const double> rows, std::size_t batch,
                            bool training, Rng& dropout_rng) const {
    if (config_.kind != ModelKind::Mlp) throw StateError("forward_batch is only defined for the MLP");
    const std::size_t F = config_.n_features;
    if (rows.size() != batch * F || batch == 0) throw ArgumentError("MLP batch is not B x n_features");
    Tensor h = Tensor::constant({batch, F}, std::vector<double>(rows.begin(), rows.end()));
    for (std::size_t l = 0; l < 3; ++l) {
        const std::string p = "mlp." + std::to_string(l + 1);
        h = ad::affine(h, leaf(leaves, p + ".w"), leaf(leaves, p + ".b"));
        h = ad::batchnorm1d(h, leaf(leaves, p + ".gamma"), leaf(leaves, p + ".beta"), bn_[l], training);
        h = ad::relu(h);
        h = ad::dropout(h, kMlpDropout, training, dropout_rng);
    }
    return ad::sigmoid(ad::affine(h, leaf(leaves, "mlp.out.w"), leaf(leaves, "mlp.out.b")));
}

std::vector<Tensor> Model::constant_leaves() const {
    std::vector<Tensor> out;
    for (const auto& g : params_.groups()) out.push_back(Tensor::constant(g.shape, g.values));
    return out;
}

std::vector<double> Model::predict(const SampleSet& set, int workers) const {
    std::vector<double> out(set.size(), 0.0);
    if (set.size() == 0) return out;
    if (config_.kind != ModelKind::Momentum && set.n_features != config_.n_features) {
        throw ArgumentError("sample set feature count does not match the model");
    }
    switch (config_.kind) {
        case ModelKind::Momentum:
            for (std::size_t i = 0; i < set.size(); ++i) {
                const auto r = set.raw(i);
                out[i] = momentum_vol_score(r[0], r[1], r[2]);
            }
            return out;
        case ModelKind::Mlp: {
            // Evaluation-mode BatchNorm only reads the running statistics, so
            // chunking does not change the result.
            const auto leaves = constant_leaves();
            Rng unused(0);
            const std::size_t F = config_.n_features;
            for (std::size_t start = 0; start < set.size(); start += kPredictChunk) {
                const std::size_t n = std::min(kPredictChunk, set.size() - start);
                std::vector<double> rows;
                rows.reserve(n * F);
                for (std::size_t i = start; i < start + n; ++i) {
                    const auto f = set.flat(i);
                    rows.insert(rows.end(), f.begin(), f.end());
                }
                const auto y = forward_batch(leaves, rows, n, false, unused);
                for (std::size_t i = 0; i < n; ++i) out[start + i] = y.values()[i];
            }
            return out;
        }
        default: {
            parallel_for(set.size(), workers, [&](std::size_t i) {
                const auto leaves = constant_leaves();
                out[i] = forward_sample(leaves, set.window(i)).item();
            });
            return out;
        }
    }
}

BatchGradient batch_gradient(const Model& model, const SampleSet& set, std::span<const std::size_t> batch,
                             std::uint64_t step, int workers) {
    const ModelConfig& cfg = model.config();
    const std::size_t B = batch.size();
    if (B == 0) throw ArgumentError("empty batch");
    const std::size_t n_params = model.params().total_size();
    BatchGradient out;
    out.grad.assign(n_params, 0.0);

    if (model.per_sample()) {
        std::vector<std::vector<double>> grads(B);
        std::vector<double> losses(B, 0.0);
        parallel_for(B, workers, [&](std::size_t b) {
            const std::size_t i = batch[b];
            auto leaves = model.params().bind();
            const Tensor y = model.forward_sample(leaves, set.window(i));
            const double label = set.labels[i];
            const Tensor loss = ad::bce_loss(y, std::span<const double>(&label, 1));
            loss.backward();
            losses[b] = loss.item();
            grads[b] = ad::ParameterSet::gather_grads(leaves);
        });
        // Fixed-order reduction keeps the sum independent of thread count.
        for (std::size_t b = 0; b < B; ++b) {
            out.loss_sum += losses[b];
            for (std::size_t k = 0; k < n_params; ++k) out.grad[k] += grads[b][k];
        }
        for (double& g : out.grad) g /= static_cast<double>(B);
        return out;
    }

    const std::size_t F = cfg.n_features;
    std::vector<double> rows;
    std::vector<double> labels;
    rows.reserve(B * F);
    for (std::size_t i : batch) {
        const auto f = set.flat(i);
        rows.insert(rows.end(), f.begin(), f.end());
        labels.push_back(set.labels[i]);
    }
    auto leaves = model.params().bind();
    Rng drop_rng = Rng::stream(cfg.seed, "dropout", step);
    const Tensor y = model.forward_batch(leaves, rows, B, true, drop_rng);
    const Tensor loss = ad::bce_loss(y, labels);
    loss.backward();
    out.grad = ad::ParameterSet::gather_grads(leaves);
    out.loss_sum = loss.item() * static_cast<double>(B);
    return out;
}

std::vector<double> train(Model& model, const SampleSet& train_set, int workers) {
    const ModelConfig& cfg = model.config();
    if (cfg.kind == ModelKind::Momentum) {
        model.set_trained(true);
        return {};
    }
    if (train_set.n_features != cfg.n_features || train_set.seq_len != cfg.seq_len) {
        throw ArgumentError("training samples do not match the model's seq_len / n_features");
    }
    const auto labeled = train_set.labeled_indices();
    bool has0 = false, has1 = false;
    for (std::size_t i : labeled) (train_set.labels[i] ? has1 : has0) = true;
    if (!has0 || !has1) throw DataError("training data must contain both classes");

    model.fit_preprocessing(train_set);
    std::vector<double> curve;
    if (cfg.epochs == 0) {
        model.set_trained(true);
        model.set_loss_curve(curve);
        return curve;
    }

    ad::AdamConfig opt;
    opt.lr = cfg.lr;
    opt.weight_decay = cfg.weight_decay;
    opt.decoupled = cfg.optimizer == OptimizerKind::AdamW;
    ad::AdamState state;
    auto& params = model.params();
    std::vector<double> flat = params.flatten();
    std::uint64_t step = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<std::size_t> order = labeled;
        Rng shuffle_rng = Rng::stream(cfg.seed, "shuffle", static_cast<std::uint64_t>(epoch));
        shuffle_rng.shuffle(std::span<std::size_t>(order));
        double epoch_loss = 0.0;

        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t B = std::min(cfg.batch_size, order.size() - start);
            const std::span<const std::size_t> batch(order.data() + start, B);
            BatchGradient bg = batch_gradient(model, train_set, batch, step, workers);
            epoch_loss += bg.loss_sum;
            const std::vector<double>& grad = bg.grad;

            ad::adamw_step(flat, grad, state, opt);
            params.assign(flat);
            ++step;
        }
        curve.push_back(epoch_loss / static_cast<double>(order.size()));
    }
    model.set_trained(true);
    model.set_loss_curve(curve);
    return curve;
}

std::vector<double> predict_scores(const Model& model, const SampleSet& set, int workers) {
    if (!model.trained()) throw StateError("model has not been trained");
    return model.predict(set, workers);
}

namespace {

using nlohmann::json;

constexpr int kCheckpointVersion = 1;

json config_json(const ModelConfig& c) {
    json j;
    for (const auto& [k, v] : c.entries()) j[k] = v;
    // Exact numeric copies next to the canonical strings.
    j["lr_value"] = c.lr;
    j["weight_decay_value"] = c.weight_decay;
    return j;
}

ModelConfig config_from_json(const json& j) {
    ModelConfig c = default_model_config(parse_model_kind(j.at("model").get<std::string>()));
    c.n_qubits = std::stoi(j.at("n_qubits").get<std::string>());
    c.depth = std::stoi(j.at("depth").get<std::string>());
    c.seq_len = std::stoull(j.at("seq_len").get<std::string>());
    c.n_features = std::stoull(j.at("n_features").get<std::string>());
    c.epochs = std::stoi(j.at("epochs").get<std::string>());
    c.batch_size = std::stoull(j.at("batch_size").get<std::string>());
    c.lr = j.at("lr_value").get<double>();
    c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
    c.weight_decay = j.at("weight_decay_value").get<double>();
    c.seed = std::stoull(j.at("seed").get<std::string>());
    return c;
}

}  // namespace

void save_checkpoint(const Model& model, const std::filesystem::path& path) {
    json j;
    j["format"] = "qtcnn-checkpoint";
    j["version"] = kCheckpointVersion;
    j["config"] = config_json(model.config());
    j["trained"] = model.trained();
    j["loss_curve"] = model.loss_curve();
    json groups = json::array();
    for (const auto& g : model.params().groups()) {
        groups.push_back({{"name", g.name}, {"shape", g.shape}, {"values", g.values}});
    }
    j["groups"] = groups;
    json bn = json::array();
    for (const auto& s : model.batchnorm_stats()) {
        bn.push_back({{"running_mean", s.running_mean}, {"running_var", s.running_var}});
    }
    j["batchnorm"] = bn;
    const auto& pca = model.pca();
    j["pca"] = {{"n_features", pca.n_features}, {"n_components", pca.n_components}, {"means", pca.means},
                {"stds", pca.stds},             {"components", pca.components},     {"eigenvalues", pca.eigenvalues},
                {"fit_rows", pca.fit_rows}};
    const auto& mm = model.minmax();
    j["minmax"] = {{"mins", mm.mins}, {"maxs", mm.maxs}, {"fit_rows", mm.fit_rows}};

    std::ofstream out(path);
    if (!out) throw IoError("cannot write checkpoint " + path.string());
    out << j.dump(1) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

Model load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read checkpoint " + path.string());
    json j;
    try {
        j = json::parse(in);
        if (j.at("format") != "qtcnn-checkpoint" || j.at("version") != kCheckpointVersion) {
            throw DataError(path.string() + ": not a supported checkpoint");
        }
        Model model(config_from_json(j.at("config")));
        const auto& groups = j.at("groups");
        if (groups.size() != model.params().groups().size()) {
            throw DataError(path.string() + ": checkpoint group count does not match the model");
        }
        for (std::size_t i = 0; i < groups.size(); ++i) {
            auto& g = model.params().group(i);
            if (groups[i].at("name") != g.name || groups[i].at("shape").get<ad::Shape>() != g.shape) {
                throw DataError(path.string() + ": checkpoint group '" + g.name + "' does not match the model");
            }
            g.values = groups[i].at("values").get<std::vector<double>>();
            if (g.values.size() != ad::shape_size(g.shape)) throw DataError(path.string() + ": bad group size");
        }
        const auto& bn = j.at("batchnorm");
        if (bn.size() != model.batchnorm_stats().size()) throw DataError(path.string() + ": bad batchnorm state");
        for (std::size_t i = 0; i < bn.size(); ++i) {
            model.batchnorm_stats()[i].running_mean = bn[i].at("running_mean").get<std::vector<double>>();
            model.batchnorm_stats()[i].running_var = bn[i].at("running_var").get<std::vector<double>>();
        }
        PcaModel pca;
        const auto& jp = j.at("pca");
        pca.n_features = jp.at("n_features");
        pca.n_components = jp.at("n_components");
        pca.means = jp.at("means").get<std::vector<double>>();
        pca.stds = jp.at("stds").get<std::vector<double>>();
        pca.components = jp.at("components").get<std::vector<double>>();
        pca.eigenvalues = jp.at("eigenvalues").get<std::vector<double>>();
        pca.fit_rows = jp.at("fit_rows");
        model.set_pca(std::move(pca));
        MinMaxMap mm;
        mm.mins = j.at("minmax").at("mins").get<std::vector<double>>();
        mm.maxs = j.at("minmax").at("maxs").get<std::vector<double>>();
        mm.fit_rows = j.at("minmax").at("fit_rows");
        model.set_minmax(std::move(mm));
        model.set_loss_curve(j.at("loss_curve").get<std::vector<double>>());
        model.set_trained(j.at("trained").get<bool>());
        return model;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": malformed checkpoint (" + e.what() + ")");
    }
}

}  // namespace qtcnn::models
