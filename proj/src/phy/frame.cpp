// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/phy/frame.hpp"

#include <algorithm>
#include <random>

#include "chestkit/errors.hpp"

namespace chestkit::phy {

void FrameConfig::validate() const {
    if (K <= 0 || K_on <= 0 || I <= 0 || cp_len < 0 || sample_rate <= 0.0)
        throw ConfigError("frame: non-positive dimension");
    if (K_on != K_p + K_d)
        throw ConfigError("frame: K_on must equal K_p + K_d");
    if (K != K_on + K_n)
        throw ConfigError("frame: K must equal K_on + K_n");
    if (static_cast<int>(pilot_indices.size()) != K_p)
        throw ConfigError("frame: pilot_indices size must equal K_p");
    if (!std::is_sorted(pilot_indices.begin(), pilot_indices.end()))
        throw ConfigError("frame: pilot_indices must be sorted");
    for (std::size_t i = 0; i < pilot_indices.size(); ++i) {
        if (pilot_indices[i] < 0 || pilot_indices[i] >= K_on)
            throw ConfigError("frame: pilot index out of [0, K_on)");
        if (i > 0 && pilot_indices[i] == pilot_indices[i - 1])
            throw ConfigError("frame: duplicate pilot index");
    }
    // the spectral active-index mapping needs an even split around DC
    if (K_on % 2 != 0 || K_on >= K)
        throw ConfigError("frame: K_on must be even and smaller than K");
}

bool FrameConfig::is_pilot(int active_index) const {
    return std::binary_search(pilot_indices.begin(), pilot_indices.end(), active_index);
}

std::vector<int> FrameConfig::data_indices() const {
    std::vector<int> out;
    out.reserve(K_d);
    for (int k = 0; k < K_on; ++k)
        if (!is_pilot(k)) out.push_back(k);
    return out;
}

int FrameConfig::fft_bin(int active_index) const {
    const int half = K_on / 2;
    const int sc = active_index < half ? active_index - half : active_index - half + 1;
    return sc < 0 ? sc + K : sc;
}

OfdmFrame build_frame(const FrameConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const int bps = bits_per_symbol(cfg.modulation);
    std::mt19937_64 rng(derive_seed(seed, 0x0f0a));
    std::bernoulli_distribution coin(0.5);

    OfdmFrame frame;
    frame.cfg = cfg;
    frame.tx_bits.resize(cfg.I);
    frame.x.assign(cfg.I, cvec(cfg.K_on));

    const std::vector<int> data_idx = cfg.data_indices();
    for (int q = 0; q < cfg.I; ++q) {
        Bits& bits = frame.tx_bits[q];
        bits.resize(static_cast<std::size_t>(cfg.K_d) * bps);
        for (auto& b : bits) b = coin(rng) ? 1 : 0;
        const cvec data = qam_map(bits, cfg.modulation);
        for (int p : cfg.pilot_indices) frame.x[q][p] = kPilotSymbol;
        for (int d = 0; d < cfg.K_d; ++d) frame.x[q][data_idx[d]] = data[d];
    }
    return frame;
}

} // namespace chestkit::phy
