// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_EST_ESTIMATORS_HPP
#define CHESTKIT_EST_ESTIMATORS_HPP

#include <optional>
#include <string>

#include "chestkit/phy/frame.hpp"
#include "chestkit/phy/link.hpp"
#include "chestkit/types.hpp"

namespace chestkit::est {

struct StaParams {
    double alpha = 2.0; // time-averaging factor, >= 1
    double beta = 2.0;  // frequency window half-width, >= 0
};

struct EstimateSeries {
    cmat h_hat;             // I x K_on
    std::string scheme;     // "DPA" or "STA"
    StaParams params{};     // meaningful for STA only
};

// Pilot least-squares on symbol 0, linearly interpolated (and edge-extended)
// across the active band. Seeds the DPA decision feedback.
cvec pilot_ls_init(const phy::ReceivedFrame& rx, const phy::FrameConfig& cfg);

// Data-pilot-aided estimation. For each symbol: equalize by the previous
// symbol's estimate, slice data positions to the nearest constellation
// point (pilot positions use the known pilot symbol), then divide the
// received symbol by the decisions. Decision errors propagate across
// symbols, which is the noise the downstream denoiser is trained on.
EstimateSeries dpa_estimate(const phy::ReceivedFrame& rx, const phy::FrameConfig& cfg,
                            const cvec& h_init);

// Spectral-temporal averaging over an estimate series: a uniform frequency
// window of half-width beta (clipped to the active band, weights
// renormalized at the edges) followed by the first-order time recursion
//   sta_q = (1 - 1/alpha) * sta_{q-1} + (1/alpha) * fd_q.
// The recursion seed is h_init when given, otherwise the first
// frequency-averaged symbol, which keeps the operator exactly linear in
// its input series.
EstimateSeries sta_estimate(const EstimateSeries& in, double alpha, double beta,
                            const std::optional<cvec>& h_init = std::nullopt);

} // namespace chestkit::est

#endif
