// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/fnn/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "chestkit/errors.hpp"

namespace chestkit::fnn {

namespace {

void check_masks(const ModelParams& model, const Mask& m_in,
                 const std::vector<Mask>& m_hidden) {
    if (static_cast<int>(m_in.size()) != model.input_size())
        throw ConfigError("mask: m_in length must match input size");
    const int hidden_layers = model.num_weight_layers() - 1;
    if (static_cast<int>(m_hidden.size()) != hidden_layers)
        throw ConfigError("mask: need one sub-mask per hidden layer");
    for (int l = 0; l < hidden_layers; ++l) {
        if (static_cast<int>(m_hidden[l].size()) != model.layer_sizes[l + 1])
            throw ConfigError("mask: hidden sub-mask length mismatch at layer " +
                              std::to_string(l + 1));
        if (std::count(m_hidden[l].begin(), m_hidden[l].end(), 1) == 0)
            throw LayerCollapse("mask: hidden layer " + std::to_string(l + 1) +
                                " has no surviving neuron");
    }
    if (std::count(m_in.begin(), m_in.end(), 1) < 2)
        throw MaskEmpty("mask: fewer than two surviving input features");
}

std::vector<double> standardized_input(const ModelParams& model,
                                       std::span<const double> input) {
    if (static_cast<int>(input.size()) != model.input_size())
        throw ConfigError("forward: input length must be " +
                          std::to_string(model.input_size()));
    std::vector<double> a0(input.begin(), input.end());
    if (!model.norm_mean.empty()) {
        for (std::size_t i = 0; i < a0.size(); ++i)
            a0[i] = (a0[i] - model.norm_mean[i]) / model.norm_std[i];
    }
    return a0;
}

std::vector<double> run_layers(const ModelParams& model, std::vector<double> a0,
                               const std::vector<Mask>* m_hidden,
                               ActivationTrace* trace) {
    const int L = model.num_weight_layers();
    if (trace) {
        trace->a.clear();
        trace->a.reserve(L + 1);
        trace->a.push_back(a0);
    }
    std::vector<double> act = std::move(a0);
    for (int l = 0; l < L; ++l) {
        const int n_in = model.layer_sizes[l];
        const int n_out = model.layer_sizes[l + 1];
        const double* w = model.weights[l].data();
        std::vector<double> next(n_out);
        for (int j = 0; j < n_out; ++j) {
            double z = model.biases[l][j];
            const double* row = w + static_cast<std::size_t>(j) * n_in;
            for (int i = 0; i < n_in; ++i) z += row[i] * act[i];
            next[j] = z;
        }
        if (l + 1 < L) {
            for (double& v : next) v = v > 0.0 ? v : 0.0; // ReLU
            if (m_hidden) {
                const Mask& m = (*m_hidden)[l];
                for (int j = 0; j < n_out; ++j)
                    if (!m[j]) next[j] = 0.0;
            }
        }
        if (trace) trace->a.push_back(next);
        act = std::move(next);
    }
    return act;
}

} // namespace

std::size_t ModelParams::param_count() const {
    std::size_t n = 0;
    for (int l = 0; l < num_weight_layers(); ++l)
        n += weights[l].size() + biases[l].size();
    return n;
}

void ModelParams::validate() const {
    if (layer_sizes.size() < 2)
        throw ConfigError("model: need at least input and output layers");
    for (int n : layer_sizes)
        if (n <= 0) throw ConfigError("model: degenerate layer size");
    const std::size_t L = layer_sizes.size() - 1;
    if (weights.size() != L || biases.size() != L)
        throw ConfigError("model: weight/bias block count mismatch");
    for (std::size_t l = 0; l < L; ++l) {
        const std::size_t expect =
            static_cast<std::size_t>(layer_sizes[l]) * layer_sizes[l + 1];
        if (weights[l].size() != expect)
            throw ConfigError("model: weight block shape mismatch at layer " +
                              std::to_string(l));
        if (biases[l].size() != static_cast<std::size_t>(layer_sizes[l + 1]))
            throw ConfigError("model: bias length mismatch at layer " + std::to_string(l));
    }
    if (!norm_mean.empty() &&
        (norm_mean.size() != static_cast<std::size_t>(layer_sizes[0]) ||
         norm_std.size() != norm_mean.size()))
        throw ConfigError("model: normalization vector length mismatch");
}

ModelParams init_model(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 3)
        throw ConfigError("init_model: need at least one hidden layer");
    for (int n : layer_sizes)
        if (n <= 0) throw ConfigError("init_model: degenerate layer size");

    ModelParams model;
    model.layer_sizes = layer_sizes;
    std::mt19937_64 rng(derive_seed(seed, 0xf22));
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int n_in = layer_sizes[l];
        const int n_out = layer_sizes[l + 1];
        std::normal_distribution<double> he(0.0, std::sqrt(2.0 / n_in));
        std::vector<double> w(static_cast<std::size_t>(n_in) * n_out);
        for (double& v : w) v = he(rng);
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(n_out, 0.0);
    }
    return model;
}

std::vector<double> forward(const ModelParams& model, std::span<const double> input,
                            ActivationTrace* trace) {
    return run_layers(model, standardized_input(model, input), nullptr, trace);
}

std::vector<double> masked_forward(const ModelParams& model, std::span<const double> input,
                                   const Mask& m_in, const std::vector<Mask>& m_hidden,
                                   ActivationTrace* trace) {
    check_masks(model, m_in, m_hidden);
    std::vector<double> a0 = standardized_input(model, input);
    for (std::size_t i = 0; i < a0.size(); ++i)
        if (!m_in[i]) a0[i] = 0.0;
    return run_layers(model, std::move(a0), &m_hidden, trace);
}

ModelParams compact_model(const ModelParams& model, const Mask& m_in,
                          const std::vector<Mask>& m_hidden) {
    model.validate();
    check_masks(model, m_in, m_hidden);
    const int L = model.num_weight_layers();

    // surviving unit indices per layer; output layer always survives whole
    std::vector<std::vector<int>> keep(L + 1);
    for (int i = 0; i < model.input_size(); ++i)
        if (m_in[i]) keep[0].push_back(i);
    for (int l = 1; l < L; ++l)
        for (int j = 0; j < model.layer_sizes[l]; ++j)
            if (m_hidden[l - 1][j]) keep[l].push_back(j);
    for (int j = 0; j < model.output_size(); ++j) keep[L].push_back(j);

    ModelParams out;
    out.activation = model.activation;
    for (int l = 0; l <= L; ++l)
        out.layer_sizes.push_back(static_cast<int>(keep[l].size()));
    for (int l = 0; l < L; ++l) {
        const int n_in = model.layer_sizes[l];
        std::vector<double> w;
        w.reserve(keep[l].size() * keep[l + 1].size());
        std::vector<double> b;
        b.reserve(keep[l + 1].size());
        for (int j : keep[l + 1]) {
            const double* row = model.weights[l].data() + static_cast<std::size_t>(j) * n_in;
            for (int i : keep[l]) w.push_back(row[i]);
            b.push_back(model.biases[l][j]);
        }
        out.weights.push_back(std::move(w));
        out.biases.push_back(std::move(b));
    }
    if (!model.norm_mean.empty()) {
        for (int i : keep[0]) {
            out.norm_mean.push_back(model.norm_mean[i]);
            out.norm_std.push_back(model.norm_std[i]);
        }
    }
    return out;
}

std::vector<double> vectorize(std::span<const cplx> h) {
    std::vector<double> v(h.size() * 2);
    for (std::size_t k = 0; k < h.size(); ++k) {
        v[k] = h[k].real();
        v[k + h.size()] = h[k].imag();
    }
    return v;
}

cvec devectorize(std::span<const double> v) {
    if (v.size() % 2 != 0)
        throw InvalidLength("devectorize: odd vector length");
    const std::size_t K = v.size() / 2;
    cvec h(K);
    for (std::size_t k = 0; k < K; ++k) h[k] = cplx(v[k], v[k + K]);
    return h;
}

std::vector<double> apply_input_mask(std::span<const double> input, const Mask& m_in) {
    if (input.size() != m_in.size())
        throw InvalidLength("apply_input_mask: length mismatch");
    std::vector<double> out;
    for (std::size_t i = 0; i < m_in.size(); ++i)
        if (m_in[i]) out.push_back(input[i]);
    return out;
}

} // namespace chestkit::fnn
