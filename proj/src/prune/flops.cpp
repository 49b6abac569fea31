// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/prune/flops.hpp"

#include <cmath>

#include "chestkit/errors.hpp"

namespace chestkit::prune {

std::int64_t flops(std::span<const int> active_counts) {
    if (active_counts.size() < 2)
        throw ConfigError("flops: need at least input and output widths");
    std::int64_t total = 0;
    for (std::size_t l = 0; l + 1 < active_counts.size(); ++l) {
        const std::int64_t in = active_counts[l];
        const std::int64_t out = active_counts[l + 1];
        if (in <= 0 || out <= 0) throw ConfigError("flops: non-positive layer width");
        total += 2 * in * out + out;
    }
    return total;
}

std::int64_t flops(const MaskPair& masks, const std::vector<int>& layer_sizes) {
    if (layer_sizes.size() != masks.hidden.size() + 2)
        throw ConfigError("flops: mask count does not match layer sizes");
    if (static_cast<int>(masks.input.size()) != layer_sizes.front())
        throw ConfigError("flops: input mask width mismatch");
    for (std::size_t l = 0; l < masks.hidden.size(); ++l)
        if (static_cast<int>(masks.hidden[l].size()) != layer_sizes[l + 1])
            throw ConfigError("flops: hidden mask width mismatch");

    std::vector<int> counts;
    counts.push_back(masks.input_active());
    for (int c : masks.hidden_active()) counts.push_back(c);
    counts.push_back(layer_sizes.back());
    return flops(counts);
}

double reduction_pct(std::int64_t c, std::int64_t c0) {
    if (c0 <= 0) throw ConfigError("reduction_pct: baseline must be positive");
    const double pct = (1.0 - static_cast<double>(c) / static_cast<double>(c0)) * 100.0;
    return std::round(pct * 100.0) / 100.0;
}

} // namespace chestkit::prune
