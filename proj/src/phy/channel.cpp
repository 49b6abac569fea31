// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/phy/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "chestkit/errors.hpp"

namespace chestkit::phy {

void ChannelProfile::validate() const {
    if (tap_delays.empty() || tap_powers.empty())
        throw ConfigError("channel: empty profile");
    if (tap_delays.size() != tap_powers.size())
        throw ConfigError("channel: tap_delays and tap_powers size mismatch");
    if (tap_delays.front() != 0)
        throw ConfigError("channel: first tap delay must be 0");
    for (std::size_t i = 1; i < tap_delays.size(); ++i)
        if (tap_delays[i] <= tap_delays[i - 1])
            throw ConfigError("channel: tap delays must be strictly increasing");
    double sum = 0.0;
    for (double p : tap_powers) {
        if (p <= 0.0) throw ConfigError("channel: tap powers must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("channel: tap powers must sum to 1");
    if (f_d < 0.0) throw ConfigError("channel: negative Doppler");
}

ChannelProfile lf_profile() { return ChannelProfile{}; }

ChannelProfile hf_profile() {
    ChannelProfile p;
    p.name = "HF";
    p.tap_delays = {0, 2, 5, 9};
    p.tap_powers = {0.4, 0.3, 0.2, 0.1};
    return p;
}

ChannelRealization realize_channel(const ChannelProfile& profile, std::size_t n_samples,
                                   std::uint64_t seed, double sample_rate,
                                   int n_oscillators) {
    profile.validate();
    if (n_samples == 0) throw ConfigError("channel: zero samples requested");
    if (sample_rate <= 0.0) throw ConfigError("channel: non-positive sample rate");
    if (n_oscillators < 1) throw ConfigError("channel: need at least one oscillator");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const std::size_t n_taps = profile.tap_delays.size();
    const int M = n_oscillators;

    ChannelRealization chan;
    chan.profile = profile;
    chan.sample_rate = sample_rate;
    chan.gains.assign(n_taps, cvec(n_samples));

    std::mt19937_64 rng(derive_seed(seed, 0xc4a7));
    std::uniform_real_distribution<double> uphase(-std::numbers::pi, std::numbers::pi);

    for (std::size_t t = 0; t < n_taps; ++t) {
        // Zheng-Xiao sum of sinusoids: oscillator m rides at f_d*cos(alpha_m)
        // on the in-phase branch and f_d*sin(alpha_m) on the quadrature one,
        // which reproduces the classical Jakes spectrum bounded by f_d.
        const double theta = uphase(rng);
        std::vector<double> wi(M), wq(M), phi(M), psi(M);
        for (int m = 0; m < M; ++m) {
            const double alpha = (two_pi * (m + 1) - std::numbers::pi + theta) / (4.0 * M);
            wi[m] = two_pi * profile.f_d * std::cos(alpha) / sample_rate;
            wq[m] = two_pi * profile.f_d * std::sin(alpha) / sample_rate;
            phi[m] = uphase(rng);
            psi[m] = uphase(rng);
        }
        const double amp = std::sqrt(profile.tap_powers[t] / M);
        cvec& g = chan.gains[t];
        for (std::size_t n = 0; n < n_samples; ++n) {
            double re = 0.0, im = 0.0;
            for (int m = 0; m < M; ++m) {
                re += std::cos(wi[m] * static_cast<double>(n) + phi[m]);
                im += std::cos(wq[m] * static_cast<double>(n) + psi[m]);
            }
            g[n] = cplx(re * amp, im * amp);
        }
    }
    return chan;
}

cvec frequency_response(const ChannelRealization& chan, std::size_t at_sample,
                        const std::vector<int>& bins, int K) {
    if (at_sample >= chan.n_samples())
        throw SimError("frequency_response: sample index past realization end");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    cvec h(bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t t = 0; t < chan.gains.size(); ++t) {
            const double ang = -two_pi * bins[k] * chan.profile.tap_delays[t] / K;
            acc += chan.gains[t][at_sample] * cplx(std::cos(ang), std::sin(ang));
        }
        h[k] = acc;
    }
    return h;
}

} // namespace chestkit::phy
