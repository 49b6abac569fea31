// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/fnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chestkit/errors.hpp"

namespace chestkit::fnn {

namespace {

struct Flat {
    // views into a flattened parameter vector, matching loss_gradient layout
    static std::size_t size(const ModelParams& m) { return m.param_count(); }

    static std::vector<double> gather(const ModelParams& m) {
        std::vector<double> v;
        v.reserve(size(m));
        for (int l = 0; l < m.num_weight_layers(); ++l) {
            v.insert(v.end(), m.weights[l].begin(), m.weights[l].end());
            v.insert(v.end(), m.biases[l].begin(), m.biases[l].end());
        }
        return v;
    }

    static void scatter(ModelParams& m, const std::vector<double>& v) {
        std::size_t pos = 0;
        for (int l = 0; l < m.num_weight_layers(); ++l) {
            std::copy_n(v.begin() + pos, m.weights[l].size(), m.weights[l].begin());
            pos += m.weights[l].size();
            std::copy_n(v.begin() + pos, m.biases[l].size(), m.biases[l].begin());
            pos += m.biases[l].size();
        }
    }
};

// Accumulates dLoss/dparams for one sample into grad (same layout as Flat)
// and returns the sample loss, the elementwise mean (y - t)^2.
double backprop_sample(const ModelParams& m, const Sample& s, std::vector<double>& grad) {
    ActivationTrace trace;
    const std::vector<double> y = forward(m, s.input, &trace);
    const int L = m.num_weight_layers();
    const int n_out = m.output_size();

    double loss = 0.0;
    std::vector<double> delta(n_out);
    for (int j = 0; j < n_out; ++j) {
        const double e = y[j] - s.label[j];
        loss += e * e;
        delta[j] = 2.0 * e / n_out;
    }
    loss /= n_out;

    // offsets of each layer's weight block in the flat layout
    std::vector<std::size_t> w_off(L), b_off(L);
    std::size_t pos = 0;
    for (int l = 0; l < L; ++l) {
        w_off[l] = pos;
        pos += m.weights[l].size();
        b_off[l] = pos;
        pos += m.biases[l].size();
    }

    for (int l = L - 1; l >= 0; --l) {
        const int n_in = m.layer_sizes[l];
        const int n_o = m.layer_sizes[l + 1];
        const std::vector<double>& a_in = trace.a[l];
        for (int j = 0; j < n_o; ++j) {
            const double d = delta[j];
            double* gw = grad.data() + w_off[l] + static_cast<std::size_t>(j) * n_in;
            for (int i = 0; i < n_in; ++i) gw[i] += d * a_in[i];
            grad[b_off[l] + j] += d;
        }
        if (l == 0) break;
        std::vector<double> prev(n_in, 0.0);
        const double* w = m.weights[l].data();
        for (int j = 0; j < n_o; ++j) {
            const double d = delta[j];
            const double* row = w + static_cast<std::size_t>(j) * n_in;
            for (int i = 0; i < n_in; ++i) prev[i] += d * row[i];
        }
        // ReLU gate: the stored activation is already post-nonlinearity
        for (int i = 0; i < n_in; ++i)
            if (trace.a[l][i] <= 0.0) prev[i] = 0.0;
        delta = std::move(prev);
    }
    return loss;
}

} // namespace

void TrainConfig::validate() const {
    if (lr < 0.0) throw ConfigError("train: negative learning rate");
    if (epochs < 0) throw ConfigError("train: negative epochs");
    if (batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
    if (split <= 0.0 || split >= 1.0) throw ConfigError("train: split must be in (0,1)");
}

double evaluate_loss(const ModelParams& model, std::span<const Sample> samples) {
    if (samples.empty()) throw ConfigError("evaluate_loss: empty sample set");
    double total = 0.0;
    for (const Sample& s : samples) {
        const std::vector<double> y = forward(model, s.input);
        double acc = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            const double e = y[j] - s.label[j];
            acc += e * e;
        }
        total += acc / static_cast<double>(y.size());
    }
    return total / static_cast<double>(samples.size());
}

std::vector<double> loss_gradient(const ModelParams& model,
                                  std::span<const Sample> samples) {
    if (samples.empty()) throw ConfigError("loss_gradient: empty sample set");
    std::vector<double> grad(Flat::size(model), 0.0);
    for (const Sample& s : samples) backprop_sample(model, s, grad);
    const double inv = 1.0 / static_cast<double>(samples.size());
    for (double& g : grad) g *= inv;
    return grad;
}

TrainResult train(ModelParams& model, std::span<const Sample> samples,
                  const TrainConfig& cfg) {
    cfg.validate();
    model.validate();
    if (samples.empty()) throw ConfigError("train: empty dataset");
    for (const Sample& s : samples) {
        if (static_cast<int>(s.input.size()) != model.input_size() ||
            static_cast<int>(s.label.size()) != model.output_size())
            throw ConfigError("train: sample shape does not match model");
    }

    if (model.norm_mean.empty()) {
        const int n = model.input_size();
        std::vector<double> mean(n, 0.0), var(n, 0.0);
        for (const Sample& s : samples)
            for (int i = 0; i < n; ++i) mean[i] += s.input[i];
        for (double& v : mean) v /= static_cast<double>(samples.size());
        for (const Sample& s : samples)
            for (int i = 0; i < n; ++i) {
                const double d = s.input[i] - mean[i];
                var[i] += d * d;
            }
        model.norm_mean = std::move(mean);
        model.norm_std.resize(n);
        for (int i = 0; i < n; ++i) {
            const double sd = std::sqrt(var[i] / static_cast<double>(samples.size()));
            model.norm_std[i] = sd > 1e-12 ? sd : 1.0; // constant features pass through
        }
    }

    const std::size_t P = Flat::size(model);
    std::vector<double> theta = Flat::gather(model);
    std::vector<double> m1(P, 0.0), m2(P, 0.0);
    constexpr double beta1 = 0.9, beta2 = 0.999, eps_adam = 1e-8;

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(derive_seed(cfg.seed, 0xba7c));

    TrainResult result;
    result.loss_history.reserve(cfg.epochs);
    long long step = 0;
    std::vector<double> grad(P);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
            const std::size_t n_batch = end - start;

            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t i = start; i < end; ++i)
                batch_loss += backprop_sample(model, samples[order[i]], grad);
            const double inv = 1.0 / static_cast<double>(n_batch);
            for (double& g : grad) g *= inv;
            batch_loss *= inv;
            if (!std::isfinite(batch_loss))
                throw TrainingDiverged("train: non-finite loss at epoch " +
                                       std::to_string(epoch));
            epoch_loss += batch_loss * static_cast<double>(n_batch);
            seen += n_batch;

            ++step;
            const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
            for (std::size_t p = 0; p < P; ++p) {
                m1[p] = beta1 * m1[p] + (1.0 - beta1) * grad[p];
                m2[p] = beta2 * m2[p] + (1.0 - beta2) * grad[p] * grad[p];
                theta[p] -= cfg.lr * (m1[p] / bc1) / (std::sqrt(m2[p] / bc2) + eps_adam);
            }
            Flat::scatter(model, theta);
        }
        result.loss_history.push_back(epoch_loss / static_cast<double>(seen));
    }
    return result;
}

} // namespace chestkit::fnn
