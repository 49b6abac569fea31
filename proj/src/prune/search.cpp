// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/prune/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chestkit/errors.hpp"

namespace chestkit::prune {

namespace {

std::vector<fnn::Sample> slice_inputs(std::span<const fnn::Sample> samples,
                                      const Mask& m_in) {
    std::vector<fnn::Sample> out;
    out.reserve(samples.size());
    for (const fnn::Sample& s : samples)
        out.push_back({fnn::apply_input_mask(s.input, m_in), s.label});
    return out;
}

} // namespace

void SearchGrid::validate() const {
    if (taus.empty()) throw ConfigError("search: empty tau grid");
    if (!std::is_sorted(taus.begin(), taus.end()))
        throw ConfigError("search: taus must be ascending");
    if (percentiles.empty()) throw ConfigError("search: empty percentile grid");
    for (double p : percentiles)
        if (p < 0.0) throw ConfigError("search: negative percentile");
}

SearchResult grid_search(const fnn::ModelParams& base,
                         std::span<const fnn::Sample> train_samples,
                         std::span<const fnn::Sample> val_samples,
                         const lrp::GlobalRelevance& relevance, const SearchGrid& grid,
                         const RetrainConfig& retrain, const BerEvaluator& ber_eval) {
    grid.validate();
    base.validate();
    if (train_samples.empty() || val_samples.empty())
        throw ConfigError("search: empty train or validation set");

    SearchResult result;
    result.baseline_flops = flops(full_masks(base.layer_sizes), base.layer_sizes);
    const Mask full_in(base.input_size(), 1);
    result.ber_target = grid.ber_target ? *grid.ber_target : ber_eval(base, full_in);

    double best_val = std::numeric_limits<double>::infinity();
    bool any_accepted = false;

    std::uint64_t cell = 0;
    for (double tau : grid.taus) {
        for (double P : grid.percentiles) {
            ++cell;
            TraceRow row;
            row.tau = tau;
            row.percentile = P;

            MaskPair masks;
            try {
                masks.input = input_mask(relevance.r_sub, tau);
                masks.hidden = arch_mask(relevance.r_arch, P);
            } catch (const MaskEmpty&) {
                row.status = "mask_empty";
                result.trace.push_back(row);
                continue;
            } catch (const LayerCollapse&) {
                row.status = "layer_collapse";
                result.trace.push_back(row);
                continue;
            }

            fnn::ModelParams candidate = fnn::compact_model(base, masks.input, masks.hidden);
            if (!retrain.warm_start) {
                fnn::ModelParams fresh =
                    fnn::init_model(candidate.layer_sizes, derive_seed(retrain.seed, cell));
                fresh.norm_mean = candidate.norm_mean; // keep the sliced statistics
                fresh.norm_std = candidate.norm_std;
                candidate = std::move(fresh);
            }

            const std::vector<fnn::Sample> tr = slice_inputs(train_samples, masks.input);
            const std::vector<fnn::Sample> va = slice_inputs(val_samples, masks.input);
            fnn::TrainConfig tc;
            tc.lr = retrain.lr;
            tc.epochs = retrain.epochs;
            tc.batch_size = retrain.batch_size;
            tc.seed = derive_seed(retrain.seed, cell * 2 + 1);
            fnn::train(candidate, tr, tc);

            row.val_loss = fnn::evaluate_loss(candidate, va);
            row.ber = ber_eval(candidate, masks.input);
            row.flops = flops(masks, base.layer_sizes);
            row.status = "ok";
            row.accepted = row.val_loss < best_val && row.ber <= result.ber_target;
            result.trace.push_back(row);

            if (row.accepted) {
                best_val = row.val_loss;
                any_accepted = true;
                result.best_masks = masks;
                result.best_model = std::move(candidate);
                result.val_loss = row.val_loss;
                result.ber = row.ber;
                result.flops = row.flops;
            }
        }
    }

    if (!any_accepted) {
        result.no_improvement = true;
        result.best_masks = full_masks(base.layer_sizes);
        result.best_model = base;
        result.val_loss = fnn::evaluate_loss(base, val_samples);
        result.ber = grid.ber_target ? ber_eval(base, full_in) : result.ber_target;
        result.flops = result.baseline_flops;
    }
    result.reduction_pct = reduction_pct(result.flops, result.baseline_flops);
    return result;
}

} // namespace chestkit::prune
