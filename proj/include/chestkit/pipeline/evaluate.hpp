// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PIPELINE_EVALUATE_HPP
#define CHESTKIT_PIPELINE_EVALUATE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chestkit/fnn/model.hpp"
#include "chestkit/pipeline/dataset.hpp"

namespace chestkit::pipeline {

struct BerCount {
    std::int64_t errors = 0;
    std::int64_t bits = 0;
    double ber() const { return bits > 0 ? static_cast<double>(errors) / bits : 0.0; }
};

struct BerRow {
    std::string scheme;
    double snr_db = 0.0;
    double ber = 0.0;
    std::int64_t bits = 0;
};

// One-tap equalization r/h_est on the data subcarriers, hard demap,
// bit comparison against the transmitted payload.
void accumulate_ber(const phy::OfdmFrame& tx, const phy::ReceivedFrame& rx,
                    const cmat& h_est, BerCount& count);

// Runs the denoiser over an STA series, symbol by symbol. When m_in is
// given the input vector is restricted to its active features first
// (compacted models). Output is the refined I x K_on estimate.
cmat fnn_estimate(const fnn::ModelParams& model, const est::EstimateSeries& sta,
                  const std::optional<fnn::Mask>& m_in = std::nullopt);

// BER of one scheme over a set of held-out frames.
double ber_over_frames(const std::vector<LinkRun>& frames,
                       const std::function<cmat(const LinkRun&)>& estimator);

// Full BER sweep across cfg.snr_grid_db for the conventional schemes and
// the two denoisers. Pruned rows are emitted only when `pruned` is given.
std::vector<BerRow> ber_sweep(const ExperimentConfig& cfg, const fnn::ModelParams& full,
                              const fnn::ModelParams* pruned, const fnn::Mask* pruned_m_in);

} // namespace chestkit::pipeline

#endif
