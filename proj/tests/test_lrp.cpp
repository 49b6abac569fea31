// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <cmath>
#include <random>

#include "doctest.h"

#include "chestkit/errors.hpp"
#include "chestkit/lrp/relevance.hpp"

using namespace chestkit;
using namespace chestkit::lrp;
using chestkit::fnn::ActivationTrace;
using chestkit::fnn::Mask;
using chestkit::fnn::ModelParams;
using chestkit::fnn::Sample;

namespace {

// single linear layer y = w . x, no bias
ModelParams linear_net(const std::vector<double>& w, int n_in) {
    ModelParams m;
    m.layer_sizes = {n_in, static_cast<int>(w.size()) / n_in};
    m.weights = {w};
    m.biases = {std::vector<double>(w.size() / n_in, 0.0)};
    return m;
}

ModelParams seeded_relu_net(const std::vector<int>& sizes, std::uint64_t seed,
                            bool zero_bias) {
    ModelParams m = fnn::init_model(sizes, seed);
    if (!zero_bias) {
        std::mt19937_64 rng(seed + 1);
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        for (auto& layer : m.biases)
            for (auto& b : layer) b = u(rng);
    }
    return m;
}

double input_leakage(const ModelParams& m, const std::vector<double>& x, double eps) {
    ActivationTrace trace;
    const auto y = fnn::forward(m, x, &trace);
    const auto R = lrp_backward(m, trace, init_output_relevance(y), eps);
    return conservation_check(R)[0];
}

} // namespace

TEST_CASE("output relevance splits the prediction magnitude per subcarrier") {
    // one subcarrier predicted at (3, 4): magnitude 5, split 2.5/2.5
    const std::vector<double> pred = {3.0, 4.0};
    const auto R = init_output_relevance(pred);
    CHECK(R[0] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(R[1] == doctest::Approx(2.5).epsilon(1e-15));

    const auto zero = init_output_relevance(std::vector<double>{0.0, 0.0});
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
}

TEST_CASE("output relevance is phase invariant") {
    const auto a = init_output_relevance(std::vector<double>{5.0, 0.0});
    const auto b = init_output_relevance(std::vector<double>{0.0, 5.0});
    CHECK(a[0] + a[1] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(a == b);
}

TEST_CASE("relevance follows the weighted contributions") {
    // y = 2 x1 + 3 x2 at x = (1,1), R_out = 5 -> R = (2, 3)
    const ModelParams m = linear_net({2.0, 3.0}, 2);
    ActivationTrace trace;
    trace.a = {{1.0, 1.0}, {5.0}};
    const auto R = lrp_backward(m, trace, std::vector<double>{5.0}, 1e-9);
    CHECK(R.R[0][0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(R.R[0][1] == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("contribution signs survive the redistribution") {
    // y = 2 x1 - x2 at x = (1,1), R_out = 1 -> R = (2, -1)
    const ModelParams m = linear_net({2.0, -1.0}, 2);
    ActivationTrace trace;
    trace.a = {{1.0, 1.0}, {1.0}};
    const auto R = lrp_backward(m, trace, std::vector<double>{1.0}, 1e-9);
    CHECK(R.R[0][0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(R.R[0][1] == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("the stabilizer prevents collapse on cancelling contributions") {
    // y = x1 - x2 at x = (1,1): denominator is exactly the stabilizer
    const ModelParams m = linear_net({1.0, -1.0}, 2);
    ActivationTrace trace;
    trace.a = {{1.0, 1.0}, {0.0}};
    const double eps = 1e-6;
    const auto R = lrp_backward(m, trace, std::vector<double>{3.0}, eps);
    CHECK(std::isfinite(R.R[0][0]));
    CHECK(std::isfinite(R.R[0][1]));
    // sign(0) := +1, so shares are +-3/eps
    CHECK(R.R[0][0] == doctest::Approx(3.0 / eps).epsilon(1e-9));
    CHECK(R.R[0][1] == doctest::Approx(-3.0 / eps).epsilon(1e-9));
}

TEST_CASE("single-layer relevance is proportional to z for every weight sign mix") {
    // brute force over weights in {-2,-1,1,2}^2, input (1,1), R_out = 1
    const double eps = 1e-9;
    for (double w1 : {-2.0, -1.0, 1.0, 2.0}) {
        for (double w2 : {-2.0, -1.0, 1.0, 2.0}) {
            const ModelParams m = linear_net({w1, w2}, 2);
            ActivationTrace trace;
            trace.a = {{1.0, 1.0}, {w1 + w2}};
            const auto R = lrp_backward(m, trace, std::vector<double>{1.0}, eps);

            const double z_sum = w1 + w2;
            const double denom = z_sum + eps * (z_sum < 0.0 ? -1.0 : 1.0);
            CHECK(std::abs(R.R[0][0] - w1 / denom) < 1e-9);
            CHECK(std::abs(R.R[0][1] - w2 / denom) < 1e-9);
        }
    }
}

TEST_CASE("relevance scales linearly with the output seed") {
    const ModelParams m = seeded_relu_net({6, 5, 4}, 31, /*zero_bias=*/true);
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> x(6);
    for (auto& v : x) v = u(rng);

    ActivationTrace trace;
    const auto y = fnn::forward(m, x, &trace);
    auto seed = init_output_relevance(y);
    const auto R1 = lrp_backward(m, trace, seed, 1e-9);
    for (auto& r : seed) r *= 3.5;
    const auto R2 = lrp_backward(m, trace, seed, 1e-9);
    for (std::size_t l = 0; l < R1.R.size(); ++l)
        for (std::size_t i = 0; i < R1.R[l].size(); ++i)
            CHECK(R2.R[l][i] == doctest::Approx(3.5 * R1.R[l][i]).epsilon(1e-9));
}

TEST_CASE("conservation is exact on bias-free nets as epsilon vanishes") {
    const ModelParams m = seeded_relu_net({8, 6, 4}, 33, /*zero_bias=*/true);
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    std::vector<double> x(8);
    for (auto& v : x) v = u(rng);

    ActivationTrace trace;
    const auto y = fnn::forward(m, x, &trace);
    const auto seed = init_output_relevance(y);

    const auto tiny = lrp_backward(m, trace, seed, 1e-9);
    for (double leak : conservation_check(tiny)) CHECK(leak < 1e-6);

    // leakage grows with the stabilizer and is reported, not hidden
    const double l3 = conservation_check(lrp_backward(m, trace, seed, 1e-3)).front();
    const double l6 = conservation_check(lrp_backward(m, trace, seed, 1e-6)).front();
    const double l9 = conservation_check(tiny).front();
    CHECK(l3 > l6);
    CHECK(l6 > l9);
    // roughly linear scaling in epsilon on a fixed network
    CHECK(l3 / l6 == doctest::Approx(1e3).epsilon(0.2));
    CHECK(l6 / l9 == doctest::Approx(1e3).epsilon(0.2));
}

TEST_CASE("a coarse stabilizer leaks visibly") {
    const ModelParams m = seeded_relu_net({8, 6, 4}, 33, /*zero_bias=*/true);
    const double leak =
        input_leakage(m, {0.7, 0.9, 1.1, 0.6, 0.8, 1.2, 0.5, 1.0}, 0.25);
    CHECK(leak > 0.0);
}

TEST_CASE("lrp rejects mismatched traces") {
    const ModelParams m = seeded_relu_net({4, 3, 2}, 36, true);
    ActivationTrace bad;
    bad.a = {{1.0, 1.0}, {1.0}};
    CHECK_THROWS_AS(lrp_backward(m, bad, std::vector<double>{1.0, 1.0}, 1e-6), TraceError);
    CHECK_THROWS_AS(
        [&] {
            ActivationTrace t;
            const auto y = fnn::forward(m, std::vector<double>(4, 1.0), &t);
            lrp_backward(m, t, std::vector<double>{1.0}, 1e-6); // wrong R_L width
        }(),
        TraceError);
}

TEST_CASE("aggregate over one sample equals the normalized single map") {
    const ModelParams m = seeded_relu_net({6, 4, 6}, 37, true);
    std::vector<Sample> one(1);
    one[0].input = {0.4, 0.8, -0.3, 0.9, 0.2, -0.7};
    one[0].label.assign(6, 0.0);

    ActivationTrace trace;
    const auto y = fnn::forward(m, one[0].input, &trace);
    const auto map = lrp_backward(m, trace, init_output_relevance(y), 1e-6);

    const GlobalRelevance g = aggregate(m, one, 1e-6);
    // r_sub recomputed from the raw map, then max-normalized
    std::vector<double> expect(3);
    for (int k = 0; k < 3; ++k) expect[k] = map.R[0][k] + map.R[0][k + 3];
    double mx = 0.0;
    for (double v : expect) mx = std::max(mx, v);
    REQUIRE(mx > 0.0);
    for (int k = 0; k < 3; ++k)
        CHECK(g.r_sub[k] == doctest::Approx(expect[k] / mx).epsilon(1e-12));
}

TEST_CASE("an always-zero input feature gets zero relevance") {
    const ModelParams m = seeded_relu_net({6, 4, 6}, 38, true);
    std::mt19937_64 rng(39);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Sample> samples(32);
    for (auto& s : samples) {
        s.input.resize(6);
        for (auto& v : s.input) v = u(rng);
        s.input[2] = 0.0; // dead feature
        s.label.assign(6, 0.0);
    }
    const GlobalRelevance g = aggregate(m, samples, 1e-6);
    CHECK(g.r_in[2] == 0.0);
}

TEST_CASE("aggregate normalizes r_sub and r_arch to a unit maximum") {
    const ModelParams m = seeded_relu_net({8, 5, 4, 8}, 40, false);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Sample> samples(64);
    for (auto& s : samples) {
        s.input.resize(8);
        for (auto& v : s.input) v = u(rng);
        s.label.assign(8, 0.0);
    }
    const GlobalRelevance g = aggregate(m, samples, 1e-6);
    REQUIRE(g.r_sub.size() == 4);
    CHECK(*std::max_element(g.r_sub.begin(), g.r_sub.end()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(g.r_arch.size() == 2);
    for (const auto& layer : g.r_arch)
        CHECK(*std::max_element(layer.begin(), layer.end()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(aggregate(m, std::vector<Sample>{}, 1e-6), ConfigError);
}

TEST_CASE("categorize applies the band definitions") {
    GlobalRelevance g;
    g.r_sub = {1.0, 0.4, 0.0, -0.2};
    const SubcarrierTaxonomy tax = categorize(g, 0.9, 1e-3);
    CHECK(tax.reliable == std::vector<int>{0});
    CHECK(tax.contributing == std::vector<int>{1});
    CHECK(tax.neutral == std::vector<int>{2});
    CHECK(tax.harmful == std::vector<int>{3});
}

TEST_CASE("all-positive relevances produce no harmful class") {
    GlobalRelevance g;
    g.r_sub = {1.0, 0.5, 0.3, 0.05};
    const SubcarrierTaxonomy tax = categorize(g);
    CHECK(tax.harmful.empty());
    CHECK(tax.reliable.size() + tax.contributing.size() + tax.neutral.size() +
              tax.harmful.size() ==
          g.r_sub.size());
}

TEST_CASE("normalized scores and taxonomy are scale free") {
    // bias-free ReLU nets are positively homogeneous, so scaling every
    // input scales raw relevances uniformly; after max-normalization the
    // global scores and the taxonomy must not move (up to the stabilizer)
    const ModelParams m = seeded_relu_net({6, 4, 6}, 42, true);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Sample> samples(32);
    for (auto& s : samples) {
        s.input.resize(6);
        for (auto& v : s.input) v = u(rng);
        s.label.assign(6, 0.0);
    }
    std::vector<Sample> scaled = samples;
    for (auto& s : scaled)
        for (auto& v : s.input) v *= 2.0;

    const auto ga = aggregate(m, samples, 1e-9);
    const auto gb = aggregate(m, scaled, 1e-9);
    for (std::size_t k = 0; k < ga.r_sub.size(); ++k)
        CHECK(gb.r_sub[k] == doctest::Approx(ga.r_sub[k]).epsilon(1e-6));

    const SubcarrierTaxonomy ta = categorize(ga);
    const SubcarrierTaxonomy tb = categorize(gb);
    CHECK(ta.reliable == tb.reliable);
    CHECK(ta.harmful == tb.harmful);
    CHECK(ta.neutral == tb.neutral);
    CHECK(ta.contributing == tb.contributing);
}
