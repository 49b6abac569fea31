// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "chestkit/errors.hpp"
#include "chestkit/fnn/checkpoint.hpp"
#include "chestkit/fnn/model.hpp"
#include "chestkit/fnn/train.hpp"

using namespace chestkit;
using namespace chestkit::fnn;

namespace {

std::vector<Sample> random_samples(int n, int in_dim, int out_dim, std::uint64_t seed,
                                   bool identity = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Sample> out(n);
    for (Sample& s : out) {
        s.input.resize(in_dim);
        for (auto& v : s.input) v = u(rng);
        if (identity) {
            s.label = s.input;
        } else {
            s.label.resize(out_dim);
            for (auto& v : s.label) v = u(rng);
        }
    }
    return out;
}

// finite-difference gradient in the same (W0,b0,W1,b1,...) layout as
// loss_gradient, probing evaluate_loss directly
std::vector<double> fd_gradient(ModelParams model, const std::vector<Sample>& samples,
                                double step) {
    std::vector<double> grad;
    auto probe = [&](double& param) {
        const double saved = param;
        param = saved + step;
        const double up = evaluate_loss(model, samples);
        param = saved - step;
        const double down = evaluate_loss(model, samples);
        param = saved;
        grad.push_back((up - down) / (2.0 * step));
    };
    for (int l = 0; l < model.num_weight_layers(); ++l) {
        for (double& w : model.weights[l]) probe(w);
        for (double& b : model.biases[l]) probe(b);
    }
    return grad;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("vectorize round trips the complex layout") {
    const cvec h = {cplx(1.0, 2.0)};
    const std::vector<double> v = vectorize(h);
    CHECK(v == std::vector<double>{1.0, 2.0});
    CHECK(devectorize(v) == h);

    const cvec zeros(5, cplx(0.0, 0.0));
    CHECK(devectorize(vectorize(zeros)) == zeros);

    const cvec sta(52);
    CHECK(vectorize(sta).size() == 104);

    CHECK_THROWS_AS(devectorize(std::vector<double>{1.0, 2.0, 3.0}), InvalidLength);
}

TEST_CASE("init_model counts parameters by shape arithmetic") {
    const ModelParams m = init_model({104, 15, 15, 15, 104}, 0);
    CHECK(m.param_count() == 3719);
    m.validate();

    const ModelParams a = init_model({8, 4, 8}, 5);
    const ModelParams b = init_model({8, 4, 8}, 5);
    CHECK(a.weights == b.weights); // deterministic per seed
    const ModelParams c = init_model({8, 4, 8}, 6);
    CHECK(a.weights != c.weights);

    CHECK_NOTHROW(init_model({2, 1, 2}, 0));
    CHECK_THROWS_AS(init_model({2, 0, 2}, 0), ConfigError);
    CHECK_THROWS_AS(init_model({2, 2}, 0), ConfigError); // no hidden layer
}

TEST_CASE("forward of a zeroed network is zero") {
    ModelParams m = init_model({6, 3, 6}, 1);
    for (auto& w : m.weights)
        for (auto& v : w) v = 0.0;
    const std::vector<double> y = forward(m, std::vector<double>(6, 1.5));
    for (double v : y) CHECK(v == 0.0);
}

TEST_CASE("single linear layer computes exactly Wx") {
    ModelParams m;
    m.layer_sizes = {2, 2};
    m.weights = {{2.0, 3.0, -1.0, 0.5}}; // rows (2,3) and (-1,0.5)
    m.biases = {{0.0, 0.0}};
    const std::vector<double> y = forward(m, std::vector<double>{1.0, 2.0});
    CHECK(y[0] == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("trace records every layer with hidden activations nonnegative") {
    const ModelParams m = init_model({104, 15, 15, 15, 104}, 3);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(104);
    for (auto& v : x) v = u(rng);

    ActivationTrace trace;
    const std::vector<double> y = forward(m, x, &trace);
    REQUIRE(trace.a.size() == 5);
    const std::vector<std::size_t> widths = {104, 15, 15, 15, 104};
    for (std::size_t l = 0; l < widths.size(); ++l) CHECK(trace.a[l].size() == widths[l]);
    for (std::size_t l = 1; l <= 3; ++l)
        for (double a : trace.a[l]) CHECK(a >= 0.0);
    for (double v : y) CHECK(std::isfinite(v));
    CHECK(trace.a.back() == y);
}

TEST_CASE("forward rejects a wrong-width input") {
    const ModelParams m = init_model({6, 3, 6}, 1);
    CHECK_THROWS_AS(forward(m, std::vector<double>(5, 0.0)), ConfigError);
}

TEST_CASE("analytic gradients match central differences") {
    const ModelParams m = init_model({8, 4, 8}, 11);
    const auto samples = random_samples(16, 8, 8, 12);
    const std::vector<double> analytic = loss_gradient(m, samples);
    const std::vector<double> numeric = fd_gradient(m, samples, 1e-5);
    REQUIRE(analytic.size() == numeric.size());
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double scale = std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-8});
        CHECK(std::abs(analytic[i] - numeric[i]) / scale < 1e-4);
    }
}

TEST_CASE("training fits the identity task") {
    ModelParams m;
    m.layer_sizes = {104, 104};
    m.weights = {std::vector<double>(104 * 104, 0.0)};
    m.biases = {std::vector<double>(104, 0.0)};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 0.1);
    for (auto& w : m.weights[0]) w = g(rng);

    const auto samples = random_samples(128, 104, 104, 8, /*identity=*/true);
    TrainConfig cfg;
    cfg.lr = 1e-2;
    cfg.epochs = 200;
    cfg.batch_size = 32;
    cfg.seed = 9;
    const TrainResult res = train(m, samples, cfg);
    CHECK(res.loss_history.back() < res.loss_history.front());
    CHECK(res.loss_history.back() < 1e-4);
}

TEST_CASE("zero learning rate leaves parameters untouched") {
    ModelParams m = init_model({6, 3, 6}, 2);
    const auto before_w = m.weights;
    const auto before_b = m.biases;
    const auto samples = random_samples(32, 6, 6, 3);
    TrainConfig cfg;
    cfg.lr = 0.0;
    cfg.epochs = 3;
    cfg.batch_size = 8;
    train(m, samples, cfg);
    CHECK(m.weights == before_w);
    CHECK(m.biases == before_b);
    CHECK_FALSE(m.norm_mean.empty()); // normalization is still recorded
}

TEST_CASE("training is deterministic and diverges loudly") {
    const auto samples = random_samples(64, 6, 6, 21);
    TrainConfig cfg;
    cfg.epochs = 10;
    cfg.batch_size = 16;
    cfg.seed = 5;

    ModelParams a = init_model({6, 4, 6}, 1);
    ModelParams b = init_model({6, 4, 6}, 1);
    const TrainResult ra = train(a, samples, cfg);
    const TrainResult rb = train(b, samples, cfg);
    CHECK(ra.loss_history == rb.loss_history);
    CHECK(a.weights == b.weights);

    ModelParams c = init_model({6, 4, 6}, 1);
    TrainConfig wild = cfg;
    wild.lr = 1e80; // drives the squared error past double range
    wild.epochs = 50;
    CHECK_THROWS_AS(train(c, samples, wild), TrainingDiverged);
}

TEST_CASE("paper-scale train config is accepted and recorded") {
    TrainConfig cfg; // lr 1e-3, batch 128 defaults
    CHECK(cfg.lr == 1e-3);
    CHECK(cfg.batch_size == 128);
    CHECK(cfg.epochs == 500);
    CHECK_NOTHROW(cfg.validate());

    ModelParams m = init_model({104, 15, 15, 15, 104}, 1);
    const auto path = temp_file("ck_meta.ckpt");
    save_checkpoint(path, m,
                    {{"lr", cfg.lr}, {"batch_size", cfg.batch_size}, {"seed", 1}});
    const Checkpoint ck = load_checkpoint(path);
    CHECK(ck.meta["lr"] == 1e-3);
    CHECK(ck.meta["batch_size"] == 128);
    CHECK(ck.model.layer_sizes == std::vector<int>{104, 15, 15, 15, 104});
    std::filesystem::remove(path);
}

TEST_CASE("all-ones masks reproduce the plain forward pass") {
    const ModelParams m = init_model({10, 5, 4, 10}, 13);
    const Mask m_in(10, 1);
    const std::vector<Mask> m_hidden = {Mask(5, 1), Mask(4, 1)};
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> x(10);
        for (auto& v : x) v = u(rng);
        CHECK(masked_forward(m, x, m_in, m_hidden) == forward(m, x));
    }
}

TEST_CASE("a masked input feature is dead") {
    const ModelParams m = init_model({6, 4, 6}, 15);
    Mask m_in(6, 1);
    m_in[2] = 0;
    const std::vector<Mask> m_hidden = {Mask(4, 1)};
    std::vector<double> x = {0.1, -0.2, 0.3, 0.4, -0.5, 0.6};
    const auto y1 = masked_forward(m, x, m_in, m_hidden);
    x[2] = 123.0;
    const auto y2 = masked_forward(m, x, m_in, m_hidden);
    CHECK(y1 == y2);
}

TEST_CASE("compaction reproduces the paper-shaped pruned architecture") {
    const ModelParams m = init_model({104, 15, 15, 15, 104}, 17);
    Mask m_in(104, 0);
    for (int k : {5, 19, 32, 46}) {
        m_in[k] = 1;
        m_in[k + 52] = 1;
    }
    std::vector<Mask> m_hidden = {Mask(15, 1), Mask(15, 1), Mask(15, 1)};
    for (int j = 0; j < 1; ++j) m_hidden[0][j] = 0;  // 15 -> 14
    for (int j = 0; j < 4; ++j) m_hidden[1][j] = 0;  // 15 -> 11
    for (int j = 0; j < 6; ++j) m_hidden[2][j] = 0;  // 15 -> 9
    const ModelParams compact = compact_model(m, m_in, m_hidden);
    CHECK(compact.layer_sizes == std::vector<int>{8, 14, 11, 9, 104});
}

TEST_CASE("all-ones compaction is byte identical") {
    const ModelParams m = init_model({10, 5, 10}, 18);
    const ModelParams c = compact_model(m, Mask(10, 1), {Mask(5, 1)});
    CHECK(c.layer_sizes == m.layer_sizes);
    CHECK(c.weights == m.weights);
    CHECK(c.biases == m.biases);
}

TEST_CASE("masked and compacted evaluation agree to 1e-12") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::bernoulli_distribution keep(0.7);

    for (int trial = 0; trial < 20; ++trial) {
        ModelParams m = init_model({12, 7, 6, 12}, 100 + trial);
        // exercise the standardization path too
        m.norm_mean.assign(12, 0.0);
        m.norm_std.assign(12, 1.0);
        for (auto& v : m.norm_mean) v = u(rng);
        for (auto& v : m.norm_std) v = 0.5 + std::abs(u(rng));

        Mask m_in(12, 0);
        int active = 0;
        for (auto& b : m_in) active += (b = keep(rng) ? 1 : 0);
        if (active < 2) {
            m_in[0] = m_in[1] = 1;
        }
        std::vector<Mask> m_hidden = {Mask(7, 0), Mask(6, 0)};
        for (auto& layer : m_hidden) {
            int on = 0;
            for (auto& b : layer) on += (b = keep(rng) ? 1 : 0);
            if (on == 0) layer[0] = 1;
        }

        const ModelParams compact = compact_model(m, m_in, m_hidden);
        std::vector<double> x(12);
        for (auto& v : x) v = u(rng);
        const auto full = masked_forward(m, x, m_in, m_hidden);
        const auto small = forward(compact, apply_input_mask(x, m_in));
        REQUIRE(full.size() == small.size());
        for (std::size_t j = 0; j < full.size(); ++j)
            CHECK(std::abs(full[j] - small[j]) <= 1e-12);
    }
}

TEST_CASE("degenerate masks are rejected") {
    const ModelParams m = init_model({6, 4, 6}, 20);
    CHECK_THROWS_AS(compact_model(m, Mask(6, 1), {Mask(4, 0)}), LayerCollapse);
    CHECK_THROWS_AS(compact_model(m, Mask(6, 0), {Mask(4, 1)}), MaskEmpty);
    CHECK_THROWS_AS(masked_forward(m, std::vector<double>(6, 0.0), Mask(5, 1),
                                   {Mask(4, 1)}),
                    ConfigError);
}

TEST_CASE("checkpoints round trip bitwise") {
    ModelParams m = init_model({104, 15, 15, 15, 104}, 23);
    m.norm_mean.assign(104, 0.25);
    m.norm_std.assign(104, 2.0);
    const auto path = temp_file("ck_roundtrip.ckpt");
    save_checkpoint(path, m, {{"seed", 23}, {"tag", "unit"}});

    const Checkpoint ck = load_checkpoint(path);
    CHECK(ck.model.layer_sizes == m.layer_sizes);
    CHECK(ck.model.weights == m.weights);
    CHECK(ck.model.biases == m.biases);
    CHECK(ck.model.norm_mean == m.norm_mean);
    CHECK(ck.model.norm_std == m.norm_std);
    CHECK(ck.meta["tag"] == "unit");
    std::filesystem::remove(path);
}

TEST_CASE("corrupt checkpoints are refused") {
    const ModelParams m = init_model({6, 3, 6}, 1);
    const auto path = temp_file("ck_corrupt.ckpt");
    save_checkpoint(path, m, {});

    // truncate
    const auto full_size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, full_size / 2);
    CHECK_THROWS_AS(load_checkpoint(path), CorruptCheckpoint);

    // bad magic
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        os << "NOTACKPTxxxxxxxxxxxxxxxxxxxxxxxx";
    }
    CHECK_THROWS_AS(load_checkpoint(path), CorruptCheckpoint);

    // future format version
    save_checkpoint(path, m, {});
    {
        std::fstream os(path, std::ios::binary | std::ios::in | std::ios::out);
        os.seekp(8);
        const std::uint32_t v = 99;
        os.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    CHECK_THROWS_AS(load_checkpoint(path), CorruptCheckpoint);

    CHECK_THROWS_AS(load_checkpoint(temp_file("ck_missing.ckpt")), CorruptCheckpoint);
    std::filesystem::remove(path);
}
