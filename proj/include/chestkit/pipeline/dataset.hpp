// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PIPELINE_DATASET_HPP
#define CHESTKIT_PIPELINE_DATASET_HPP

#include <filesystem>
#include <vector>

#include "chestkit/est/estimators.hpp"
#include "chestkit/fnn/train.hpp"
#include "chestkit/pipeline/config.hpp"

namespace chestkit::pipeline {

struct Dataset {
    std::vector<fnn::Sample> train;
    std::vector<fnn::Sample> val;
};

// One simulated link pass: transmitted frame, received frame and the
// conventional estimate chain computed on it.
struct LinkRun {
    phy::OfdmFrame tx;
    phy::ReceivedFrame rx;
    est::EstimateSeries dpa;
    est::EstimateSeries sta;
};

// Simulates one frame end to end at the given SNR. `stream` separates
// independent frame populations (training vs held-out evaluation).
LinkRun simulate_link(const ExperimentConfig& cfg, double snr_db, std::uint64_t stream);

// Training corpus: frames cycle through snr_grid_db, samples are
// (vectorized STA estimate, vectorized true channel) pairs, split by frame
// into train/validation so symbols of one frame never straddle the split.
Dataset generate_dataset(const ExperimentConfig& cfg);

// Held-out frames for BER evaluation, disjoint from the training corpus
// by seed stream.
std::vector<LinkRun> generate_eval_frames(const ExperimentConfig& cfg, double snr_db,
                                          int n_frames);

void save_dataset(const std::filesystem::path& path, const Dataset& ds);
Dataset load_dataset(const std::filesystem::path& path);

} // namespace chestkit::pipeline

#endif
