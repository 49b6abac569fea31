// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PRUNE_SEARCH_HPP
#define CHESTKIT_PRUNE_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "chestkit/fnn/train.hpp"
#include "chestkit/lrp/relevance.hpp"
#include "chestkit/prune/flops.hpp"
#include "chestkit/prune/masks.hpp"

namespace chestkit::prune {

struct SearchGrid {
    std::vector<double> taus = {kTauPositive};
    std::vector<double> percentiles = {15.0, 20.0, 25.0, 30.0};
    std::optional<double> ber_target; // defaults to the unpruned model's BER
    double ref_snr_db = 30.0;

    void validate() const;
};

struct RetrainConfig {
    int epochs = 20;
    double lr = 1e-3;
    int batch_size = 128;
    std::uint64_t seed = 0;
    bool warm_start = false; // default: fresh init on the compacted shape
};

struct TraceRow {
    double tau = 0.0;
    double percentile = 0.0;
    double val_loss = 0.0;
    double ber = 0.0;
    std::int64_t flops = 0;
    bool accepted = false;
    std::string status; // "ok" or the skip reason
};

struct SearchResult {
    MaskPair best_masks;
    fnn::ModelParams best_model;
    double val_loss = 0.0;
    double ber = 0.0;
    std::int64_t flops = 0;
    double reduction_pct = 0.0;
    bool no_improvement = false;
    double ber_target = 0.0;
    std::int64_t baseline_flops = 0;
    std::vector<TraceRow> trace;
};

// BER of a candidate model over the held-out evaluation set; m_in names
// the input features the candidate consumes.
using BerEvaluator = std::function<double(const fnn::ModelParams&, const Mask& m_in)>;

// Iterative joint optimization over the (tau, P) grid: build masks,
// compact, retrain, then accept a cell as the new best iff its validation
// loss improves on the previous best AND its BER stays within ber_target.
// Cells whose masks are degenerate are recorded in the trace and skipped.
// When nothing passes the gate the result carries the unpruned baseline
// with no_improvement set. Deterministic per seed; grid order is tau
// ascending outer, P ascending inner, and each cell's retrain seed depends
// only on its grid position.
SearchResult grid_search(const fnn::ModelParams& base,
                         std::span<const fnn::Sample> train_samples,
                         std::span<const fnn::Sample> val_samples,
                         const lrp::GlobalRelevance& relevance, const SearchGrid& grid,
                         const RetrainConfig& retrain, const BerEvaluator& ber_eval);

} // namespace chestkit::prune

#endif
