// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PHY_CHANNEL_HPP
#define CHESTKIT_PHY_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chestkit/types.hpp"

namespace chestkit::phy {

// Tapped-delay profile. tap_powers are linear and sum to 1 so that the
// frequency response has unit mean power.
struct ChannelProfile {
    std::string name = "LF";
    std::vector<int> tap_delays = {0, 1};         // sample offsets, first must be 0
    std::vector<double> tap_powers = {0.7, 0.3};  // linear, sums to 1
    double f_d = 1000.0;                          // max Doppler, Hz

    void validate() const; // throws ConfigError
};

// Mildly frequency-selective two-tap profile.
ChannelProfile lf_profile();
// Strongly frequency-selective four-tap profile.
ChannelProfile hf_profile();

// Per-tap complex gain time series sampled at sample_rate.
struct ChannelRealization {
    ChannelProfile profile;
    double sample_rate = 0.0;
    std::vector<cvec> gains; // taps x n_samples

    std::size_t n_samples() const { return gains.empty() ? 0 : gains[0].size(); }
};

// Each tap is an independent Rayleigh process with the classical Jakes
// Doppler spectrum, generated by a sum of n_oscillators sinusoids with
// seeded random phases (Zheng-Xiao construction). Deterministic per seed;
// f_d = 0 freezes every tap at a constant complex gain.
ChannelRealization realize_channel(const ChannelProfile& profile, std::size_t n_samples,
                                   std::uint64_t seed, double sample_rate,
                                   int n_oscillators = 32);

// Frequency response of the realization at time sample `at_sample`,
// restricted to the K-point DFT bins listed in `bins`.
cvec frequency_response(const ChannelRealization& chan, std::size_t at_sample,
                        const std::vector<int>& bins, int K);

} // namespace chestkit::phy

#endif
