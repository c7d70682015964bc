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


#include "qtcnn/models/preprocess.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::models {

std::vector<double> PcaModel::standardize(std::span<const double> x) const {
    if (!fitted()) throw StateError("PCA model used before fitting");
    if (x.size() != n_features) throw ArgumentError("PCA input has the wrong number of features");
    std::vector<double> out(n_features);
    for (std::size_t j = 0; j < n_features; ++j) out[j] = (x[j] - means[j]) / stds[j];
    return out;
}

std::vector<double> PcaModel::transform(std::span<const double> x) const {
    const auto s = standardize(x);
    std::vector<double> out(n_components, 0.0);
    for (std::size_t c = 0; c < n_components; ++c) {
        const double* row = components.data() + c * n_features;
        for (std::size_t j = 0; j < n_features; ++j) out[c] += row[j] * s[j];
    }
    return out;
}

PcaModel fit_pca(std::span<const double> x, std::size_t n_rows, std::size_t n_features,
                 std::size_t n_components) {
    if (x.size() != n_rows * n_features) throw ArgumentError("fit_pca input is not N x d");
    if (n_components == 0 || n_features < n_components) {
        throw ArgumentError("fit_pca needs 1 <= n_components <= d");
    }
    if (n_rows <= n_components) throw DataError("fit_pca needs more rows than components");

    PcaModel model;
    model.n_features = n_features;
    model.n_components = n_components;
    model.means.assign(n_features, 0.0);
    model.stds.assign(n_features, 0.0);
    const double n = static_cast<double>(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t j = 0; j < n_features; ++j) model.means[j] += x[i * n_features + j];
    for (double& m : model.means) m /= n;
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t j = 0; j < n_features; ++j) {
            const double d = x[i * n_features + j] - model.means[j];
            model.stds[j] += d * d;
        }
    for (double& s : model.stds) {
        s = std::sqrt(s / n);
        if (!(s > 0.0)) s = 1.0;
    }

    const auto d = static_cast<Eigen::Index>(n_features);
    Eigen::MatrixXd z(static_cast<Eigen::Index>(n_rows), d);
    for (std::size_t i = 0; i < n_rows; ++i)
        for (std::size_t j = 0; j < n_features; ++j)
            z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (x[i * n_features + j] - model.means[j]) / model.stds[j];
    const Eigen::MatrixXd cov = (z.transpose() * z) / (n - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw DataError("PCA eigendecomposition failed");

    // Eigen returns ascending eigenvalues.
    model.components.assign(n_components * n_features, 0.0);
    for (std::size_t c = 0; c < n_components; ++c) {
        const Eigen::Index col = d - 1 - static_cast<Eigen::Index>(c);
        Eigen::VectorXd v = solver.eigenvectors().col(col);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0) v = -v;
        for (std::size_t j = 0; j < n_features; ++j) model.components[c * n_features + j] = v(static_cast<Eigen::Index>(j));
        model.eigenvalues.push_back(solver.eigenvalues()(col));
    }
    model.fit_rows = n_rows;
    return model;
}

std::vector<double> MinMaxMap::apply(std::span<const double> x) const {
    if (!fitted()) throw StateError("min-max map used before fitting");
    if (x.size() != mins.size()) throw ArgumentError("min-max input has the wrong number of features");
    constexpr double kPi = std::numbers::pi;
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double range = maxs[j] - mins[j];
        out[j] = range > 0.0 ? std::clamp(kPi * (x[j] - mins[j]) / range, 0.0, kPi) : kPi / 2;
    }
    return out;
}

MinMaxMap fit_minmax(std::span<const double> x, std::size_t n_rows, std::size_t n_features) {
    if (x.size() != n_rows * n_features) throw ArgumentError("fit_minmax input is not N x d");
    if (n_rows == 0) throw DataError("fit_minmax needs at least one row");
    MinMaxMap map;
    map.mins.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_features));
    map.maxs = map.mins;
    for (std::size_t i = 1; i < n_rows; ++i)
        for (std::size_t j = 0; j < n_features; ++j) {
            map.mins[j] = std::min(map.mins[j], x[i * n_features + j]);
            map.maxs[j] = std::max(map.maxs[j], x[i * n_features + j]);
        }
    map.fit_rows = n_rows;
    return map;
}

}  // namespace qtcnn::models
