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

#include "qtcnn/autodiff/ops.hpp"

#include <cmath>

#include "qtcnn/common/errors.hpp"

namespace qtcnn::autodiff {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ArgumentError(what);
}

// Parent k of an interior node, nullptr when it needs no gradient.
Node* grad_target(Node& self, std::size_t k) {
    Node* p = self.parents[k].get();
    return p->requires_grad ? p : nullptr;
}

template <class Fwd, class Deriv>
Tensor elementwise(const Tensor& x, Fwd fwd, Deriv deriv_from_output) {
    std::vector<double> out(x.size());
    const auto in = x.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fwd(in[i]);
    return Tensor::from_op(x.shape(), std::move(out), {x}, [deriv_from_output](Node& self) {
        Node* p = grad_target(self, 0);
        if (!p) return;
        auto& g = p->grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] += self.grad[i] * deriv_from_output(p->value[i], self.value[i]);
        }
    });
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
    require(a.rank() == 2 && b.rank() == 2 && a.dim(1) == b.dim(0), "matmul shape mismatch");
    const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
    std::vector<double> out(m * n, 0.0);
    const auto av = a.values();
    const auto bv = b.values();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t p = 0; p < k; ++p) {
            const double aip = av[i * k + p];
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aip * bv[p * n + j];
        }
    }
    return Tensor::from_op({m, n}, std::move(out), {a, b}, [m, k, n](Node& self) {
        const auto& g = self.grad;
        const auto& av = self.parents[0]->value;
        const auto& bv = self.parents[1]->value;
        if (Node* pa = grad_target(self, 0)) {
            auto& ga = pa->grad_buffer();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t p = 0; p < k; ++p) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j) acc += g[i * n + j] * bv[p * n + j];
                    ga[i * k + p] += acc;
                }
        }
        if (Node* pb = grad_target(self, 1)) {
            auto& gb = pb->grad_buffer();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t p = 0; p < k; ++p) {
                    const double aip = av[i * k + p];
                    for (std::size_t j = 0; j < n; ++j) gb[p * n + j] += aip * g[i * n + j];
                }
        }
    });
}

Tensor affine(const Tensor& x, const Tensor& weight, const Tensor& bias) {
    require(weight.rank() == 2, "affine weight must be (out x in)");
    const std::size_t out_dim = weight.dim(0), in_dim = weight.dim(1);
    require(bias.size() == out_dim, "affine bias length mismatch");
    const bool vector_input = x.rank() == 1;
    require(vector_input ? x.dim(0) == in_dim : (x.rank() == 2 && x.dim(1) == in_dim),
            "affine input width mismatch");
    const std::size_t batch = vector_input ? 1 : x.dim(0);

    std::vector<double> out(batch * out_dim);
    const auto xv = x.values();
    const auto wv = weight.values();
    const auto bv = bias.values();
    for (std::size_t r = 0; r < batch; ++r) {
        const double* xr = xv.data() + r * in_dim;
        for (std::size_t o = 0; o < out_dim; ++o) {
            const double* wo = wv.data() + o * in_dim;
            double acc = bv[o];
            for (std::size_t i = 0; i < in_dim; ++i) acc += xr[i] * wo[i];
            out[r * out_dim + o] = acc;
        }
    }
    Shape shape = vector_input ? Shape{out_dim} : Shape{batch, out_dim};
    return Tensor::from_op(std::move(shape), std::move(out), {x, weight, bias},
                           [batch, in_dim, out_dim](Node& self) {
        const auto& g = self.grad;
        const auto& xv = self.parents[0]->value;
        const auto& wv = self.parents[1]->value;
        if (Node* px = grad_target(self, 0)) {
            auto& gx = px->grad_buffer();
            for (std::size_t r = 0; r < batch; ++r)
                for (std::size_t o = 0; o < out_dim; ++o) {
                    const double go = g[r * out_dim + o];
                    if (go == 0.0) continue;
                    const double* wo = wv.data() + o * in_dim;
                    double* gxr = gx.data() + r * in_dim;
                    for (std::size_t i = 0; i < in_dim; ++i) gxr[i] += go * wo[i];
                }
        }
        if (Node* pw = grad_target(self, 1)) {
            auto& gw = pw->grad_buffer();
            for (std::size_t r = 0; r < batch; ++r)
                for (std::size_t o = 0; o < out_dim; ++o) {
                    const double go = g[r * out_dim + o];
                    if (go == 0.0) continue;
                    const double* xr = xv.data() + r * in_dim;
                    double* gwo = gw.data() + o * in_dim;
                    for (std::size_t i = 0; i < in_dim; ++i) gwo[i] += go * xr[i];
                }
        }
        if (Node* pb = grad_target(self, 2)) {
            auto& gb = pb->grad_buffer();
            for (std::size_t r = 0; r < batch; ++r)
                for (std::size_t o = 0; o < out_dim; ++o) gb[o] += g[r * out_dim + o];
        }
    });
}

Tensor conv1d(const Tensor& x, const Tensor& weight, const Tensor& bias) {
    require(x.rank() == 2, "conv1d input must be (T x C_in)");
    require(weight.rank() == 3, "conv1d weight must be (C_out x C_in x K)");
    const std::size_t T = x.dim(0), cin = x.dim(1);
    const std::size_t cout = weight.dim(0), K = weight.dim(2);
    require(weight.dim(1) == cin, "conv1d channel mismatch");
    require(K % 2 == 1, "conv1d kernel size must be odd for same padding");
    require(bias.size() == cout, "conv1d bias length mismatch");
    const auto pad = static_cast<std::ptrdiff_t>(K / 2);

    std::vector<double> out(T * cout);
    const auto xv = x.values();
    const auto wv = weight.values();
    const auto bv = bias.values();
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t o = 0; o < cout; ++o) {
            double acc = bv[o];
            for (std::size_t k = 0; k < K; ++k) {
                const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t + k) - pad;
                if (src < 0 || src >= static_cast<std::ptrdiff_t>(T)) continue;
                const double* xs = xv.data() + static_cast<std::size_t>(src) * cin;
                const double* w = wv.data() + o * cin * K + k;
                for (std::size_t c = 0; c < cin; ++c) acc += w[c * K] * xs[c];
            }
            out[t * cout + o] = acc;
        }
    }
    return Tensor::from_op({T, cout}, std::move(out), {x, weight, bias},
                           [T, cin, cout, K, pad](Node& self) {
        const auto& g = self.grad;
        const auto& xv = self.parents[0]->value;
        const auto& wv = self.parents[1]->value;
        Node* px = grad_target(self, 0);
        Node* pw = grad_target(self, 1);
        Node* pb = grad_target(self, 2);
        std::vector<double>* gx = px ? &px->grad_buffer() : nullptr;
        std::vector<double>* gw = pw ? &pw->grad_buffer() : nullptr;
        for (std::size_t t = 0; t < T; ++t) {
            for (std::size_t o = 0; o < cout; ++o) {
                const double go = g[t * cout + o];
                if (pb) pb->grad_buffer()[o] += go;
                if (go == 0.0) continue;
                for (std::size_t k = 0; k < K; ++k) {
                    const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t + k) - pad;
                    if (src < 0 || src >= static_cast<std::ptrdiff_t>(T)) continue;
                    const std::size_t s = static_cast<std::size_t>(src);
                    for (std::size_t c = 0; c < cin; ++c) {
                        const std::size_t widx = o * cin * K + c * K + k;
                        if (gx) (*gx)[s * cin + c] += go * wv[widx];
                        if (gw) (*gw)[widx] += go * xv[s * cin + c];
                    }
                }
            }
        }
    });
}

Tensor relu(const Tensor& x) {
    return elementwise(
        x, [](double v) { return v > 0.0 ? v : 0.0; },
        [](double in, double) { return in > 0.0 ? 1.0 : 0.0; });
}

Tensor tanh(const Tensor& x) {
    return elementwise(
        x, [](double v) { return std::tanh(v); }, [](double, double out) { return 1.0 - out * out; });
}

Tensor sigmoid(const Tensor& x) {
    return elementwise(
        x,
        [](double v) {
            if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
            const double e = std::exp(v);
            return e / (1.0 + e);
        },
        [](double, double out) { return out * (1.0 - out); });
}

Tensor scale(const Tensor& x, double factor) {
    return elementwise(
        x, [factor](double v) { return factor * v; }, [factor](double, double) { return factor; });
}

Tensor add(const Tensor& a, const Tensor& b) {
    require(a.size() == b.size(), "add size mismatch");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.values()[i] + b.values()[i];
    return Tensor::from_op(a.shape(), std::move(out), {a, b}, [](Node& self) {
        for (std::size_t k = 0; k < 2; ++k) {
            if (Node* p = grad_target(self, k)) {
                auto& g = p->grad_buffer();
                for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
            }
        }
    });
}

Tensor global_avg_pool(const Tensor& x) {
    require(x.rank() == 2 && x.dim(0) > 0, "global_avg_pool input must be (T x C), T > 0");
    const std::size_t T = x.dim(0), C = x.dim(1);
    std::vector<double> out(C, 0.0);
    const auto xv = x.values();
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t c = 0; c < C; ++c) out[c] += xv[t * C + c];
    for (double& v : out) v /= static_cast<double>(T);
    return Tensor::from_op({C}, std::move(out), {x}, [T, C](Node& self) {
        Node* p = grad_target(self, 0);
        if (!p) return;
        auto& g = p->grad_buffer();
        const double inv = 1.0 / static_cast<double>(T);
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t c = 0; c < C; ++c) g[t * C + c] += self.grad[c] * inv;
    });
}

Tensor concat(const Tensor& a, const Tensor& b) {
    if (a.rank() == 1 && b.rank() == 1) {
        const std::size_t na = a.size();
        std::vector<double> out(a.values().begin(), a.values().end());
        out.insert(out.end(), b.values().begin(), b.values().end());
        const std::size_t n = out.size();
        return Tensor::from_op({n}, std::move(out), {a, b}, [na](Node& self) {
            if (Node* p = grad_target(self, 0)) {
                auto& g = p->grad_buffer();
                for (std::size_t i = 0; i < na; ++i) g[i] += self.grad[i];
            }
            if (Node* p = grad_target(self, 1)) {
                auto& g = p->grad_buffer();
                for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[na + i];
            }
        });
    }
    require(a.rank() == 2 && b.rank() == 2 && a.dim(0) == b.dim(0), "concat shape mismatch");
    const std::size_t rows = a.dim(0), ca = a.dim(1), cb = b.dim(1), cw = ca + cb;
    std::vector<double> out(rows * cw);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < ca; ++c) out[r * cw + c] = a.values()[r * ca + c];
        for (std::size_t c = 0; c < cb; ++c) out[r * cw + ca + c] = b.values()[r * cb + c];
    }
    return Tensor::from_op({rows, cw}, std::move(out), {a, b}, [rows, ca, cb, cw](Node& self) {
        if (Node* p = grad_target(self, 0)) {
            auto& g = p->grad_buffer();
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < ca; ++c) g[r * ca + c] += self.grad[r * cw + c];
        }
        if (Node* p = grad_target(self, 1)) {
            auto& g = p->grad_buffer();
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cb; ++c) g[r * cb + c] += self.grad[r * cw + ca + c];
        }
    });
}

Tensor mean(const Tensor& x) {
    require(x.size() > 0, "mean of empty tensor");
    double acc = 0.0;
    for (double v : x.values()) acc += v;
    const double n = static_cast<double>(x.size());
    return Tensor::from_op({1}, {acc / n}, {x}, [n](Node& self) {
        Node* p = grad_target(self, 0);
        if (!p) return;
        auto& g = p->grad_buffer();
        for (double& v : g) v += self.grad[0] / n;
    });
}

Tensor batchnorm1d(const Tensor& x, const Tensor& gamma, const Tensor& beta, BatchNormStats& stats,
                   bool training) {
    require(x.rank() == 2, "batchnorm1d input must be (B x F)");
    const std::size_t B = x.dim(0), F = x.dim(1);
    require(gamma.size() == F && beta.size() == F, "batchnorm1d affine size mismatch");
    require(stats.running_mean.size() == F && stats.running_var.size() == F,
            "batchnorm1d running statistics size mismatch");
    require(B > 0, "batchnorm1d on empty batch");

    const auto xv = x.values();
    std::vector<double> mu(F, 0.0), var(F, 0.0);
    if (training) {
        for (std::size_t b = 0; b < B; ++b)
            for (std::size_t f = 0; f < F; ++f) mu[f] += xv[b * F + f];
        for (double& m : mu) m /= static_cast<double>(B);
        for (std::size_t b = 0; b < B; ++b)
            for (std::size_t f = 0; f < F; ++f) {
                const double d = xv[b * F + f] - mu[f];
                var[f] += d * d;
            }
        for (std::size_t f = 0; f < F; ++f) {
            const double biased = var[f] / static_cast<double>(B);
            const double unbiased = B > 1 ? var[f] / static_cast<double>(B - 1) : biased;
            var[f] = biased;
            stats.running_mean[f] = (1.0 - stats.momentum) * stats.running_mean[f] + stats.momentum * mu[f];
            stats.running_var[f] = (1.0 - stats.momentum) * stats.running_var[f] + stats.momentum * unbiased;
        }
    } else {
        mu = stats.running_mean;
        var = stats.running_var;
    }

    std::vector<double> inv_std(F), xhat(B * F), out(B * F);
    for (std::size_t f = 0; f < F; ++f) inv_std[f] = 1.0 / std::sqrt(var[f] + stats.eps);
    const auto gv = gamma.values();
    const auto bv = beta.values();
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t f = 0; f < F; ++f) {
            const std::size_t i = b * F + f;
            xhat[i] = (xv[i] - mu[f]) * inv_std[f];
            out[i] = gv[f] * xhat[i] + bv[f];
        }

    return Tensor::from_op({B, F}, std::move(out), {x, gamma, beta},
                           [B, F, training, inv_std = std::move(inv_std), xhat = std::move(xhat)](Node& self) {
        const auto& g = self.grad;
        const auto& gv = self.parents[1]->value;
        std::vector<double> sum_g(F, 0.0), sum_gx(F, 0.0);
        for (std::size_t b = 0; b < B; ++b)
            for (std::size_t f = 0; f < F; ++f) {
                sum_g[f] += g[b * F + f];
                sum_gx[f] += g[b * F + f] * xhat[b * F + f];
            }
        if (Node* px = grad_target(self, 0)) {
            auto& gx = px->grad_buffer();
            const double nb = static_cast<double>(B);
            for (std::size_t b = 0; b < B; ++b)
                for (std::size_t f = 0; f < F; ++f) {
                    const std::size_t i = b * F + f;
                    if (training) {
                        gx[i] += gv[f] * inv_std[f] / nb * (nb * g[i] - sum_g[f] - xhat[i] * sum_gx[f]);
                    } else {
                        gx[i] += g[i] * gv[f] * inv_std[f];
                    }
                }
        }
        if (Node* pg = grad_target(self, 1)) {
            auto& gg = pg->grad_buffer();
            for (std::size_t f = 0; f < F; ++f) gg[f] += sum_gx[f];
        }
        if (Node* pb = grad_target(self, 2)) {
            auto& gb = pb->grad_buffer();
            for (std::size_t f = 0; f < F; ++f) gb[f] += sum_g[f];
        }
    });
}

Tensor dropout(const Tensor& x, double p, bool training, Rng& rng) {
    if (!training || p <= 0.0) return x;
    require(p < 1.0, "dropout probability must be < 1");
    const double keep_scale = 1.0 / (1.0 - p);
    std::vector<double> mask(x.size());
    for (double& m : mask) m = rng.uniform() < p ? 0.0 : keep_scale;
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = x.values()[i] * mask[i];
    return Tensor::from_op(x.shape(), std::move(out), {x}, [mask = std::move(mask)](Node& self) {
        Node* px = grad_target(self, 0);
        if (!px) return;
        auto& g = px->grad_buffer();
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * mask[i];
    });
}

}  // namespace qtcnn::autodiff
