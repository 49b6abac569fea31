// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PHY_FRAME_HPP
#define CHESTKIT_PHY_FRAME_HPP

#include <cstdint>
#include <vector>

#include "chestkit/phy/qam.hpp"
#include "chestkit/types.hpp"

namespace chestkit::phy {

// 802.11p-style OFDM grid. Active subcarriers are indexed 0..K_on-1 in
// spectral order (-K_on/2 .. -1, +1 .. +K_on/2 around the unused DC bin);
// fft_bin() maps an active index onto the K-point DFT grid.
struct FrameConfig {
    int K = 64;        // total subcarriers
    int K_on = 52;     // active subcarriers
    int K_p = 4;       // pilots
    int K_d = 48;      // data
    int K_n = 12;      // guard band (incl. DC)
    int I = 50;        // OFDM symbols per frame
    int cp_len = 16;   // cyclic-prefix samples
    std::vector<int> pilot_indices = {5, 19, 32, 46}; // subcarriers -21,-7,+7,+21
    Modulation modulation = Modulation::QPSK;
    double sample_rate = 10e6;

    void validate() const; // throws ConfigError

    bool is_pilot(int active_index) const;
    std::vector<int> data_indices() const;
    int fft_bin(int active_index) const;
    int samples_per_symbol() const { return K + cp_len; }
    int samples_per_frame() const { return I * samples_per_symbol(); }
    int bits_per_frame_symbol() const { return K_d * bits_per_symbol(modulation); }
};

// Pilot subcarriers carry this constant in every OFDM symbol.
inline constexpr cplx kPilotSymbol{1.0, 0.0};

struct OfdmFrame {
    FrameConfig cfg;
    std::vector<Bits> tx_bits; // I rows of K_d * log2(M) data bits
    cmat x;                    // I x K_on frequency-domain symbols, pilots inserted
};

// Deterministic per seed: random data bits mapped onto the grid,
// pilots fixed at kPilotSymbol on every symbol.
OfdmFrame build_frame(const FrameConfig& cfg, std::uint64_t seed);

} // namespace chestkit::phy

#endif
