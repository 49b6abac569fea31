// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_FNN_TRAIN_HPP
#define CHESTKIT_FNN_TRAIN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "chestkit/fnn/model.hpp"

namespace chestkit::fnn {

struct TrainConfig {
    double lr = 1e-3;
    int epochs = 500;
    int batch_size = 128;
    double split = 0.8;      // train fraction, consumed by dataset generation
    std::uint64_t seed = 0;  // batch shuffling order

    void validate() const;
};

struct Sample {
    std::vector<double> input;
    std::vector<double> label;
};

struct TrainResult {
    std::vector<double> loss_history; // mean training loss per epoch
};

// Adam (beta1 = 0.9, beta2 = 0.999, eps = 1e-8) on elementwise MSE.
// Computes the per-feature z-score normalization from `samples` and stores
// it in the model before the first step (skipped when the model already
// carries one, e.g. a compacted retrain with inherited statistics).
// Throws TrainingDiverged on a NaN loss.
TrainResult train(ModelParams& model, std::span<const Sample> samples,
                  const TrainConfig& cfg);

double evaluate_loss(const ModelParams& model, std::span<const Sample> samples);

// Mean MSE gradient over a batch, flattened in (W0, b0, W1, b1, ...) order.
// Exposed so the finite-difference check can probe the same path the
// optimizer uses.
std::vector<double> loss_gradient(const ModelParams& model,
                                  std::span<const Sample> samples);

} // namespace chestkit::fnn

#endif
