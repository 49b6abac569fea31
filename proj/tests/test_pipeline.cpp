// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "chestkit/errors.hpp"
#include "chestkit/pipeline/config.hpp"
#include "chestkit/pipeline/dataset.hpp"
#include "chestkit/pipeline/evaluate.hpp"
#include "chestkit/pipeline/reports.hpp"

using namespace chestkit;
using namespace chestkit::pipeline;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.frame.I = 10;
    cfg.dataset_size = 100; // 10 frames
    cfg.train.epochs = 2;
    cfg.eval_frames = 2;
    cfg.lrp.n_samples = 20;
    return cfg;
}

} // namespace

TEST_CASE("config json round trips with exact field names") {
    const ExperimentConfig cfg = tiny_config();
    const nlohmann::json j = config_to_json(cfg);
    for (const char* key : {"frame", "channel", "snr_grid_db", "sta", "train", "lrp",
                            "search", "seeds", "dataset_size", "eval_frames"})
        CHECK(j.contains(key));
    for (const char* key : {"K", "K_on", "K_p", "K_d", "K_n", "I", "cp_len",
                            "pilot_indices", "modulation", "sample_rate"})
        CHECK(j["frame"].contains(key));
    for (const char* key : {"name", "tap_delays", "tap_powers", "f_d"})
        CHECK(j["channel"].contains(key));
    CHECK(j["sta"].contains("alpha"));
    CHECK(j["sta"].contains("beta"));

    const ExperimentConfig back = config_from_json(j);
    CHECK(config_to_json(back) == j);
}

TEST_CASE("config loader flags bad values") {
    nlohmann::json j = config_to_json(tiny_config());
    j["frame"]["K_d"] = 47;
    CHECK_THROWS_AS(config_from_json(j), ConfigError);

    j = config_to_json(tiny_config());
    j["snr_grid_db"] = nlohmann::json::array();
    CHECK_THROWS_AS(config_from_json(j), ConfigError);

    j = config_to_json(tiny_config());
    j["dataset_size"] = 5; // below one frame
    CHECK_THROWS_AS(config_from_json(j), ConfigError);

    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("named channel profiles resolve from config") {
    nlohmann::json j = config_to_json(tiny_config());
    j["channel"] = {{"name", "HF"}};
    const ExperimentConfig cfg = config_from_json(j);
    CHECK(cfg.channel.tap_delays == std::vector<int>{0, 2, 5, 9});
    CHECK(cfg.channel.f_d == 1000.0);
}

TEST_CASE("dataset arithmetic follows the frame split") {
    ExperimentConfig cfg = tiny_config();
    cfg.frame.I = 50;
    cfg.dataset_size = 5000;
    CHECK(cfg.frames_in_dataset() == 100);
    const Dataset ds = generate_dataset(cfg);
    CHECK(ds.train.size() == 4000);
    CHECK(ds.val.size() == 1000);
    CHECK(ds.train[0].input.size() == 104);
    CHECK(ds.train[0].label.size() == 104);
}

TEST_CASE("dataset files are byte identical across runs") {
    const ExperimentConfig cfg = tiny_config();
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "ds_a.bin";
    const auto p2 = dir / "ds_b.bin";
    save_dataset(p1, generate_dataset(cfg));
    save_dataset(p2, generate_dataset(cfg));
    CHECK(slurp(p1) == slurp(p2));

    const Dataset loaded = load_dataset(p1);
    const Dataset direct = generate_dataset(cfg);
    CHECK(loaded.train.size() == direct.train.size());
    CHECK(loaded.train[0].input == direct.train[0].input);
    CHECK(loaded.val.back().label == direct.val.back().label);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("training and evaluation frame populations are disjoint") {
    const ExperimentConfig cfg = tiny_config();
    const LinkRun train_frame = simulate_link(cfg, 10.0, 0);
    const auto eval = generate_eval_frames(cfg, 10.0, 1);
    CHECK(train_frame.tx.tx_bits != eval[0].tx.tx_bits);
}

TEST_CASE("a perfect estimate yields zero ber") {
    // genie equalization on a noiseless static link
    ExperimentConfig cfg = tiny_config();
    cfg.channel.f_d = 0.0;
    const LinkRun clean = simulate_link(cfg, 300.0, 3);
    BerCount count;
    accumulate_ber(clean.tx, clean.rx, clean.rx.h_true, count);
    CHECK(count.bits > 0);
    CHECK(count.errors == 0);
}

TEST_CASE("independent bits sit at chance level") {
    ExperimentConfig cfg = tiny_config();
    cfg.frame.I = 1100; // 105600 data bits
    const phy::OfdmFrame tx = phy::build_frame(cfg.frame, 50);
    const phy::OfdmFrame other = phy::build_frame(cfg.frame, 51);

    // pretend the receiver decided the other frame's symbols: the
    // estimate equals r / x_other, so demap returns x_other's bits
    const auto chan = phy::realize_channel(cfg.channel, cfg.frame.samples_per_frame(),
                                           52, cfg.frame.sample_rate);
    const phy::ReceivedFrame rx = phy::transmit(other, chan, 300.0, 53);
    BerCount count;
    accumulate_ber(tx, rx, rx.h_true, count);
    CHECK(count.bits >= 100000);
    CHECK(count.ber() == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("csv writers are deterministic and carry the schemas") {
    const auto dir = std::filesystem::temp_directory_path();

    lrp::GlobalRelevance g;
    g.r_sub = {1.0, 0.5, 0.0, -0.1};
    g.r_in.assign(8, 0.1);
    g.r_arch = {{0.2, 1.0}};
    const auto tax = lrp::categorize(g);

    const auto p = dir / "relevance.csv";
    write_relevance_csv(p, g, tax);
    const std::string first = slurp(p);
    write_relevance_csv(p, g, tax);
    CHECK(slurp(p) == first);
    CHECK(first.find("subcarrier_index,relevance,category") == 0);
    CHECK(first.find("reliable") != std::string::npos);
    CHECK(first.find("harmful") != std::string::npos);

    const auto pb = dir / "ber.csv";
    write_ber_csv(pb, {{"STA", 10.0, 0.0123, 96000}});
    CHECK(slurp(pb) == "scheme,snr_db,ber,bits\nSTA,10,0.0123,96000\n");

    const auto pf = dir / "flops.csv";
    write_flops_csv(pf, {{"LF-QPSK", "baseline", 7289, 0.0},
                         {"LF-QPSK", "joint-pruned", 2740, 62.41}});
    const std::string flops_text = slurp(pf);
    CHECK(flops_text.find("LF-QPSK,joint-pruned,2740,62.41") != std::string::npos);

    std::filesystem::remove(p);
    std::filesystem::remove(pb);
    std::filesystem::remove(pf);
}

TEST_CASE("fnn_estimate matches manual per-symbol application") {
    const ExperimentConfig cfg = tiny_config();
    const LinkRun run = simulate_link(cfg, 20.0, 9);
    auto model = fnn::init_model({104, 8, 104}, 1);
    const cmat est = fnn_estimate(model, run.sta);
    REQUIRE(est.size() == run.sta.h_hat.size());
    const auto direct =
        fnn::devectorize(fnn::forward(model, fnn::vectorize(run.sta.h_hat[3])));
    CHECK(est[3] == direct);
}
