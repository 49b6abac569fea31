// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PRUNE_MASKS_HPP
#define CHESTKIT_PRUNE_MASKS_HPP

#include <limits>
#include <span>
#include <vector>

#include "chestkit/fnn/model.hpp"

namespace chestkit::prune {

using fnn::Mask;

struct MaskPair {
    Mask input;                // length 2*K_on, real/imag features
    std::vector<Mask> hidden;  // one sub-mask per hidden layer

    int input_active() const;
    std::vector<int> hidden_active() const;
};

// Threshold just above zero: keeps strictly positive relevances, drops
// neutral (0) and harmful (< 0) subcarriers.
inline constexpr double kTauPositive = std::numeric_limits<double>::denorm_min();

// Keeps subcarrier k iff r_sub[k] >= tau; both the real and imaginary
// features of a kept subcarrier stay active. Throws MaskEmpty when
// nothing survives.
Mask input_mask(std::span<const double> r_sub, double tau);

// Per hidden layer: keep neurons whose relevance is >= the value just
// above the bottom P percent of that layer (nearest-rank cutoff, ties at
// the cutoff kept). P = 0 keeps everything; a layer can never empty out
// for P in [0, 100) since the layer maximum always survives. P >= 100
// throws LayerCollapse.
std::vector<Mask> arch_mask(const std::vector<std::vector<double>>& r_arch,
                            double percentile);

MaskPair full_masks(const std::vector<int>& layer_sizes);

} // namespace chestkit::prune

#endif
