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
 * The model zoo: QTCNN, QCNN, QNN, MLP and the momentum-volatility baseline.
 *
 * QTCNN: temporal encoder (conv1d F->32, ReLU, conv1d 32->32, ReLU, global
 * average pool, affine 32->n_q, tanh, times pi) feeding the shared-parameter
 * conv/pool circuit; the hybrid head is sigmoid(MLP([q; z])) with
 * (n_q+1)->64->32->1 and ReLU.
 *
 * QCNN: z = W_PCA . standardize(x) of the window's last row, unshared
 * conv/pool circuit, same head.
 *
 * QNN: phi = minmax(W_PCA . standardize(x)) in [0, pi], ring ansatz,
 * y = sigmoid(w . <Z> + b).
 *
 * MLP: three blocks of affine -> BatchNorm -> ReLU -> dropout(0.1) with
 * widths 384, 192, 96, then affine -> sigmoid.
 *
 * Parameter groups are stored in a fixed order per kind (see group_names()),
 * which is also the order of the flat vector used by the optimizer and the
 * checkpoint.
 */

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtcnn/autodiff/ops.hpp"
#include "qtcnn/autodiff/parameters.hpp"
#include "qtcnn/circuits/ansatz.hpp"
#include "qtcnn/common/rng.hpp"
#include "qtcnn/datapipe/sample_set.hpp"
#include "qtcnn/models/config.hpp"
#include "qtcnn/models/preprocess.hpp"

namespace qtcnn::models {

using autodiff::Tensor;

struct EncoderTensors {
    Tensor w1, b1, w2, b2, wp, bp;
};

/// x is (T x F); returns the n_q-vector z in [-pi, pi].
Tensor temporal_encode(const Tensor& x, const EncoderTensors& p);

struct HeadTensors {
    Tensor w1, b1, w2, b2, w3, b3;
};

/// sigmoid(MLP([q; z])), shape {1}.
Tensor hybrid_head(const Tensor& q, const Tensor& z, const HeadTensors& p);

/// (0.5 mom5 + 0.5 mom20) / (vol20 + 1e-9).
double momentum_vol_score(double mom5, double mom20, double vol20);

class Model {
  public:
    /// Builds and initializes parameters from config.seed. Needs
    /// config.n_features > 0 for every kind except Momentum.
    explicit Model(ModelConfig config);

    const ModelConfig& config() const { return config_; }
    ModelKind kind() const { return config_.kind; }

    autodiff::ParameterSet& params() { return params_; }
    const autodiff::ParameterSet& params() const { return params_; }
    std::vector<std::string> group_names() const;

    std::vector<autodiff::BatchNormStats>& batchnorm_stats() { return bn_; }
    const std::vector<autodiff::BatchNormStats>& batchnorm_stats() const { return bn_; }

    const PcaModel& pca() const { return pca_; }
    const MinMaxMap& minmax() const { return minmax_; }
    void set_pca(PcaModel pca) { pca_ = std::move(pca); }
    void set_minmax(MinMaxMap map) { minmax_ = std::move(map); }

    /// The circuit for QTCNN/QCNN/QNN; nullptr otherwise.
    const circuits::Circuit* circuit() const { return circuit_ ? &*circuit_ : nullptr; }
    const circuits::QConvLayout& layout() const { return layout_; }

    bool trained() const { return trained_ || config_.kind == ModelKind::Momentum; }
    void set_trained(bool trained) { trained_ = trained; }
    const std::vector<double>& loss_curve() const { return loss_curve_; }
    void set_loss_curve(std::vector<double> curve) { loss_curve_ = std::move(curve); }

    /// true for kinds trained one sample per graph (all but MLP).
    bool per_sample() const;

    /// Fits the train-split statistics the kind needs (PCA, min-max).
    void fit_preprocessing(const datapipe::SampleSet& train);

    /// Probability for one T x F window, shape {1}. Leaves come from
    /// params().bind() (or constants for inference).
    Tensor forward_sample(std::span<const Tensor> leaves, std::span<const double> window) const;

    /// MLP probabilities for `batch` flat rows (batch x F), shape {batch, 1}.
    /// Training mode updates the BatchNorm running statistics.
    Tensor forward_batch(std::span<const Tensor> leaves, std::span<const double> rows, std::size_t batch,
                         bool training, Rng& dropout_rng) const;

    /// Leaves holding the current parameters as constants.
    std::vector<Tensor> constant_leaves() const;

    /// Probabilities (or baseline scores) for every sample; deterministic.
    std::vector<double> predict(const datapipe::SampleSet& set, int workers = 0) const;

  private:
    const Tensor& leaf(std::span<const Tensor> leaves, const std::string& name) const;
    std::size_t add_group(const std::string& name, autodiff::Shape shape, std::vector<double> values);
    void add_uniform(const std::string& name, autodiff::Shape shape, double bound, Rng& rng);
    void build_head(std::size_t z_width, Rng& rng);
    std::vector<double> flat_input(std::span<const double> window) const;

    ModelConfig config_;
    autodiff::ParameterSet params_;
    std::map<std::string, std::size_t> index_;
    mutable std::vector<autodiff::BatchNormStats> bn_;
    PcaModel pca_;
    MinMaxMap minmax_;
    circuits::QConvLayout layout_;
    std::optional<circuits::Circuit> circuit_;
    bool trained_ = false;
    std::vector<double> loss_curve_;
};

struct BatchGradient {
    double loss_sum = 0.0;
    /// Mean BCE gradient over the batch, in parameter-group order.
    std::vector<double> grad;
};

/// One forward-backward pass over the samples `batch` of `set`. `step`
/// selects the dropout stream. The sum is independent of `workers`.
BatchGradient batch_gradient(const Model& model, const datapipe::SampleSet& set,
                             std::span<const std::size_t> batch, std::uint64_t step, int workers = 0);

/// Mini-batch training over the labeled samples of `train`: shuffled
/// batches, AdamW (Adam for QNN), BCE loss. Returns the per-epoch mean
/// training loss and marks the model trained. Results do not depend on
/// `workers`. Throws DataError when either class is missing.
std::vector<double> train(Model& model, const datapipe::SampleSet& train, int workers = 0);

/// One score per sample, in sample order. Throws StateError when the model
/// has not been trained.
std::vector<double> predict_scores(const Model& model, const datapipe::SampleSet& set, int workers = 0);

void save_checkpoint(const Model& model, const std::filesystem::path& path);
Model load_checkpoint(const std::filesystem::path& path);

}  // namespace qtcnn::models
