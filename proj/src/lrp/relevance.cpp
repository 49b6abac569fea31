// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/lrp/relevance.hpp"

#include <algorithm>
#include <cmath>

#include "chestkit/errors.hpp"

namespace chestkit::lrp {

namespace {

double sign_or_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

void max_normalize(std::vector<double>& v) {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, x);
    if (mx > 0.0)
        for (double& x : v) x /= mx;
}

} // namespace

std::vector<double> init_output_relevance(std::span<const double> prediction) {
    if (prediction.size() % 2 != 0)
        throw InvalidLength("init_output_relevance: odd prediction length");
    const std::size_t K = prediction.size() / 2;
    std::vector<double> R(prediction.size());
    for (std::size_t k = 0; k < K; ++k) {
        const double mag = std::hypot(prediction[k], prediction[k + K]);
        R[k] = 0.5 * mag;
        R[k + K] = 0.5 * mag;
    }
    return R;
}

RelevanceMap lrp_backward(const fnn::ModelParams& model, const fnn::ActivationTrace& trace,
                          std::span<const double> output_relevance, double epsilon) {
    model.validate();
    if (epsilon <= 0.0) throw ConfigError("lrp: epsilon must be positive");
    const int L = model.num_weight_layers();
    if (static_cast<int>(trace.a.size()) != L + 1)
        throw TraceError("lrp: trace layer count does not match model");
    for (int l = 0; l <= L; ++l)
        if (static_cast<int>(trace.a[l].size()) != model.layer_sizes[l])
            throw TraceError("lrp: trace width mismatch at layer " + std::to_string(l));
    if (static_cast<int>(output_relevance.size()) != model.output_size())
        throw TraceError("lrp: output relevance length mismatch");

    RelevanceMap map;
    map.epsilon = epsilon;
    map.R.assign(L + 1, {});
    map.R[L].assign(output_relevance.begin(), output_relevance.end());

    for (int l = L - 1; l >= 0; --l) {
        const int n_in = model.layer_sizes[l];
        const int n_out = model.layer_sizes[l + 1];
        const std::vector<double>& a = trace.a[l];
        const double* w = model.weights[l].data();
        const std::vector<double>& R_next = map.R[l + 1];

        std::vector<double>& R = map.R[l];
        R.assign(n_in, 0.0);
        for (int j = 0; j < n_out; ++j) {
            const double* row = w + static_cast<std::size_t>(j) * n_in;
            double denom = 0.0;
            for (int i = 0; i < n_in; ++i) denom += a[i] * row[i];
            const double stabilized = denom + epsilon * sign_or_plus(denom);
            const double share = R_next[j] / stabilized;
            for (int i = 0; i < n_in; ++i) R[i] += a[i] * row[i] * share;
        }
    }
    return map;
}

GlobalRelevance aggregate(const fnn::ModelParams& model,
                          std::span<const fnn::Sample> samples, double epsilon,
                          ArchAggregation arch_mode) {
    if (samples.empty()) throw ConfigError("aggregate: empty sample set");
    const int L = model.num_weight_layers();
    const int n_in = model.input_size();

    std::vector<double> in_sum(n_in, 0.0);
    std::vector<std::vector<double>> arch_sum;
    for (int l = 1; l < L; ++l) arch_sum.emplace_back(model.layer_sizes[l], 0.0);

    for (const fnn::Sample& s : samples) {
        fnn::ActivationTrace trace;
        const std::vector<double> y = fnn::forward(model, s.input, &trace);
        const RelevanceMap map =
            lrp_backward(model, trace, init_output_relevance(y), epsilon);
        for (int i = 0; i < n_in; ++i) in_sum[i] += map.R[0][i];
        for (int l = 1; l < L; ++l) {
            for (int j = 0; j < model.layer_sizes[l]; ++j) {
                const double r = map.R[l][j];
                arch_sum[l - 1][j] += arch_mode == ArchAggregation::Absolute ? std::abs(r) : r;
            }
        }
    }

    const double inv = 1.0 / static_cast<double>(samples.size());
    GlobalRelevance g;
    g.r_in = std::move(in_sum);
    for (double& v : g.r_in) v *= inv;

    const std::size_t K = static_cast<std::size_t>(n_in) / 2;
    g.r_sub.resize(K);
    for (std::size_t k = 0; k < K; ++k) g.r_sub[k] = g.r_in[k] + g.r_in[k + K];

    max_normalize(g.r_in);
    max_normalize(g.r_sub);

    g.r_arch = std::move(arch_sum);
    for (auto& layer : g.r_arch) {
        for (double& v : layer) v *= inv;
        max_normalize(layer);
    }
    return g;
}

SubcarrierTaxonomy categorize(const GlobalRelevance& g, double reliable_band,
                              double neutral_tol) {
    SubcarrierTaxonomy tax;
    for (int k = 0; k < static_cast<int>(g.r_sub.size()); ++k) {
        const double r = g.r_sub[k];
        if (r >= reliable_band)
            tax.reliable.push_back(k);
        else if (r < -neutral_tol)
            tax.harmful.push_back(k);
        else if (std::abs(r) <= neutral_tol)
            tax.neutral.push_back(k);
        else
            tax.contributing.push_back(k);
    }
    return tax;
}

std::vector<double> conservation_check(const RelevanceMap& map) {
    if (map.R.empty()) throw TraceError("conservation_check: empty map");
    double out_total = 0.0;
    for (double r : map.R.back()) out_total += r;
    const double denom = std::abs(out_total) > 0.0 ? std::abs(out_total) : 1.0;

    std::vector<double> leakage(map.R.size());
    for (std::size_t l = 0; l < map.R.size(); ++l) {
        double total = 0.0;
        for (double r : map.R[l]) total += r;
        leakage[l] = std::abs(total - out_total) / denom;
    }
    return leakage;
}

} // namespace chestkit::lrp
