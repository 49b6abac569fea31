// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PHY_LINK_HPP
#define CHESTKIT_PHY_LINK_HPP

#include <cstdint>

#include "chestkit/phy/channel.hpp"
#include "chestkit/phy/frame.hpp"
#include "chestkit/types.hpp"

namespace chestkit::phy {

struct ReceivedFrame {
    cmat r;       // I x K_on received frequency-domain symbols
    cmat h_true;  // I x K_on mid-symbol frequency response (ground truth)
    double snr_db = 0.0;
};

// Runs the frame through the full time-domain chain: per-symbol IDFT,
// cyclic prefix, per-sample tapped-delay convolution with the time-varying
// gains, AWGN, CP removal and DFT. Doppler-induced inter-carrier
// interference therefore shows up physically in r rather than being
// modeled in closed form. h_true is the tap DFT sampled at each symbol's
// mid-body sample. Noise variance is 10^(-snr_db/10) per complex sample
// relative to the unit-power frequency-domain constellation; snr_db may
// be +infinity for a noiseless pass.
ReceivedFrame transmit(const OfdmFrame& frame, const ChannelRealization& chan,
                       double snr_db, std::uint64_t noise_seed);

} // namespace chestkit::phy

#endif
