// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PIPELINE_CONFIG_HPP
#define CHESTKIT_PIPELINE_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "chestkit/est/estimators.hpp"
#include "chestkit/fnn/train.hpp"
#include "chestkit/phy/channel.hpp"
#include "chestkit/phy/frame.hpp"
#include "chestkit/prune/search.hpp"

#include "json.hpp"

namespace chestkit::pipeline {

struct Seeds {
    std::uint64_t data = 1;
    std::uint64_t model = 2;
    std::uint64_t search = 3;
};

// A stabilizer of 0.1 keeps per-sample relevance shares bounded when a
// neuron's weighted input sum passes near zero; much smaller values let
// rare near-singular denominators dominate the sample average.
struct LrpSettings {
    double epsilon = 0.1;
    int n_samples = 1000;
};

// Full experiment description; the JSON config file mirrors these field
// names one to one (see configs/ for examples).
struct ExperimentConfig {
    phy::FrameConfig frame;
    phy::ChannelProfile channel;
    std::vector<double> snr_grid_db = {10.0, 20.0, 30.0};
    est::StaParams sta;
    fnn::TrainConfig train;
    std::vector<int> hidden_sizes = {15, 15, 15};
    LrpSettings lrp;
    prune::SearchGrid search;
    int retrain_epochs = 0; // 0 = one fifth of train.epochs
    bool warm_start = false;
    Seeds seeds;
    int dataset_size = 5000; // OFDM symbols
    int eval_frames = 20;    // held-out frames per SNR point

    void validate() const;
    int frames_in_dataset() const { return dataset_size / frame.I; }
    int effective_retrain_epochs() const;
    std::vector<int> layer_sizes() const; // 2K_on, hidden..., 2K_on
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

} // namespace chestkit::pipeline

#endif
