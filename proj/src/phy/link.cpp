// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/phy/link.hpp"

#include <cmath>
#include <random>

#include "chestkit/errors.hpp"
#include "chestkit/phy/fft.hpp"

namespace chestkit::phy {

ReceivedFrame transmit(const OfdmFrame& frame, const ChannelRealization& chan,
                       double snr_db, std::uint64_t noise_seed) {
    const FrameConfig& cfg = frame.cfg;
    cfg.validate();
    if (static_cast<int>(frame.x.size()) != cfg.I ||
        (cfg.I > 0 && static_cast<int>(frame.x[0].size()) != cfg.K_on))
        throw SimError("transmit: frame matrix does not match its config");

    const int sym_len = cfg.samples_per_symbol();
    const std::size_t frame_len = static_cast<std::size_t>(cfg.samples_per_frame());
    if (chan.n_samples() < frame_len)
        throw SimError("transmit: channel realization shorter than frame");
    const int max_delay = chan.profile.tap_delays.back();
    if (max_delay > cfg.cp_len)
        throw SimError("transmit: tap delay exceeds cyclic prefix");

    std::vector<int> bins(cfg.K_on);
    for (int k = 0; k < cfg.K_on; ++k) bins[k] = cfg.fft_bin(k);

    // modulate: per-symbol IDFT plus cyclic prefix, laid out back to back
    cvec tx(frame_len, cplx(0.0, 0.0));
    cvec spectrum(cfg.K);
    for (int q = 0; q < cfg.I; ++q) {
        std::fill(spectrum.begin(), spectrum.end(), cplx(0.0, 0.0));
        for (int k = 0; k < cfg.K_on; ++k) spectrum[bins[k]] = frame.x[q][k];
        dft_unitary(spectrum, /*inverse=*/true);
        const std::size_t base = static_cast<std::size_t>(q) * sym_len;
        for (int n = 0; n < cfg.cp_len; ++n)
            tx[base + n] = spectrum[cfg.K - cfg.cp_len + n];
        for (int n = 0; n < cfg.K; ++n)
            tx[base + cfg.cp_len + n] = spectrum[n];
    }

    // tapped-delay convolution with time-varying gains; pre-frame history is
    // zero, which the cyclic prefix absorbs as long as delays fit inside it
    cvec rx(frame_len, cplx(0.0, 0.0));
    for (std::size_t t = 0; t < chan.gains.size(); ++t) {
        const int d = chan.profile.tap_delays[t];
        const cvec& g = chan.gains[t];
        for (std::size_t n = static_cast<std::size_t>(d); n < frame_len; ++n)
            rx[n] += g[n] * tx[n - d];
    }

    // AWGN, variance sigma^2 per complex sample
    const double sigma2 = std::isinf(snr_db) ? 0.0 : std::pow(10.0, -snr_db / 10.0);
    if (sigma2 > 0.0) {
        std::mt19937_64 rng(derive_seed(noise_seed, 0xa37));
        std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2 / 2.0));
        for (auto& v : rx) v += cplx(gauss(rng), gauss(rng));
    }

    // demodulate and sample the ground-truth response mid-body
    ReceivedFrame out;
    out.snr_db = snr_db;
    out.r.assign(cfg.I, cvec(cfg.K_on));
    out.h_true.assign(cfg.I, cvec(cfg.K_on));
    cvec body(cfg.K);
    for (int q = 0; q < cfg.I; ++q) {
        const std::size_t base = static_cast<std::size_t>(q) * sym_len + cfg.cp_len;
        for (int n = 0; n < cfg.K; ++n) body[n] = rx[base + n];
        dft_unitary(body, /*inverse=*/false);
        for (int k = 0; k < cfg.K_on; ++k) out.r[q][k] = body[bins[k]];
        const std::size_t mid = base + static_cast<std::size_t>(cfg.K) / 2;
        out.h_true[q] = frequency_response(chan, mid, bins, cfg.K);
    }
    return out;
}

} // namespace chestkit::phy
