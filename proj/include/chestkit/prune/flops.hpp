// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PRUNE_FLOPS_HPP
#define CHESTKIT_PRUNE_FLOPS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "chestkit/prune/masks.hpp"

namespace chestkit::prune {

// Dense-layer FLOPs: 2 * in * out multiply-accumulates plus out bias adds
// per layer, summed over the chain in -> hidden... -> out. The output
// layer is always counted at full width.
std::int64_t flops(std::span<const int> active_counts);

// Same, from masks over a concrete architecture.
std::int64_t flops(const MaskPair& masks, const std::vector<int>& layer_sizes);

// Complexity reduction (1 - c / c0) * 100, rounded to two decimals.
double reduction_pct(std::int64_t c, std::int64_t c0);

} // namespace chestkit::prune

#endif
