// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/prune/masks.hpp"

#include <algorithm>
#include <cmath>

#include "chestkit/errors.hpp"

namespace chestkit::prune {

int MaskPair::input_active() const {
    return static_cast<int>(std::count(input.begin(), input.end(), 1));
}

std::vector<int> MaskPair::hidden_active() const {
    std::vector<int> counts;
    counts.reserve(hidden.size());
    for (const Mask& m : hidden)
        counts.push_back(static_cast<int>(std::count(m.begin(), m.end(), 1)));
    return counts;
}

Mask input_mask(std::span<const double> r_sub, double tau) {
    const std::size_t K = r_sub.size();
    Mask m(2 * K, 0);
    int kept = 0;
    for (std::size_t k = 0; k < K; ++k) {
        if (r_sub[k] >= tau) {
            m[k] = 1;
            m[k + K] = 1;
            ++kept;
        }
    }
    if (kept == 0) throw MaskEmpty("input_mask: no subcarrier reaches tau");
    return m;
}

std::vector<Mask> arch_mask(const std::vector<std::vector<double>>& r_arch,
                            double percentile) {
    if (percentile < 0.0)
        throw ConfigError("arch_mask: negative percentile");
    if (percentile >= 100.0)
        throw LayerCollapse("arch_mask: percentile >= 100 removes whole layers");

    std::vector<Mask> masks;
    masks.reserve(r_arch.size());
    for (const auto& layer : r_arch) {
        const std::size_t n = layer.size();
        if (n == 0) throw ConfigError("arch_mask: empty relevance layer");
        std::vector<double> sorted(layer);
        std::sort(sorted.begin(), sorted.end());
        // nearest-rank index of the cutoff: the first value above the
        // bottom-P% block, clamped so the layer maximum always survives
        std::size_t rank = static_cast<std::size_t>(
            std::ceil(percentile / 100.0 * static_cast<double>(n)));
        if (rank >= n) rank = n - 1;
        const double threshold = sorted[rank];

        Mask m(n, 0);
        for (std::size_t j = 0; j < n; ++j)
            if (layer[j] >= threshold) m[j] = 1;
        masks.push_back(std::move(m));
    }
    return masks;
}

MaskPair full_masks(const std::vector<int>& layer_sizes) {
    MaskPair mp;
    mp.input.assign(layer_sizes.front(), 1);
    for (std::size_t l = 1; l + 1 < layer_sizes.size(); ++l)
        mp.hidden.emplace_back(layer_sizes[l], 1);
    return mp;
}

} // namespace chestkit::prune
