// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/est/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "chestkit/errors.hpp"
#include "chestkit/phy/qam.hpp"

namespace chestkit::est {

namespace {

// Defensive floor for decision-feedback division; constellation points of
// the supported modulations never get this small.
constexpr double kDivisorFloor = 1e-6;

cplx guarded_div(cplx num, cplx den) {
    if (std::abs(den) < 1e-12) den = cplx(1e-12, 0.0);
    return num / den;
}

} // namespace

cvec pilot_ls_init(const phy::ReceivedFrame& rx, const phy::FrameConfig& cfg) {
    if (rx.r.empty()) throw SimError("pilot_ls_init: empty frame");
    const cvec& r0 = rx.r[0];
    const auto& pilots = cfg.pilot_indices;

    cvec h(cfg.K_on);
    std::vector<cplx> hp(pilots.size());
    for (std::size_t p = 0; p < pilots.size(); ++p)
        hp[p] = r0[pilots[p]] / phy::kPilotSymbol;

    // linear interpolation between pilots, constant extension outside
    for (int k = 0; k < cfg.K_on; ++k) {
        if (k <= pilots.front()) {
            h[k] = hp.front();
        } else if (k >= pilots.back()) {
            h[k] = hp.back();
        } else {
            std::size_t seg = 0;
            while (pilots[seg + 1] < k) ++seg;
            const double t = static_cast<double>(k - pilots[seg]) /
                             static_cast<double>(pilots[seg + 1] - pilots[seg]);
            h[k] = hp[seg] * (1.0 - t) + hp[seg + 1] * t;
        }
    }
    return h;
}

EstimateSeries dpa_estimate(const phy::ReceivedFrame& rx, const phy::FrameConfig& cfg,
                            const cvec& h_init) {
    if (static_cast<int>(h_init.size()) != cfg.K_on)
        throw SimError("dpa_estimate: h_init length must be K_on");
    const int I = static_cast<int>(rx.r.size());

    EstimateSeries out;
    out.scheme = "DPA";
    out.h_hat.assign(I, cvec(cfg.K_on));

    const cvec* prev = &h_init;
    for (int q = 0; q < I; ++q) {
        cvec& hq = out.h_hat[q];
        for (int k = 0; k < cfg.K_on; ++k) {
            cplx decided;
            if (cfg.is_pilot(k)) {
                decided = phy::kPilotSymbol;
            } else {
                const cplx eq = guarded_div(rx.r[q][k], (*prev)[k]);
                decided = phy::qam_nearest(eq, cfg.modulation);
                if (std::abs(decided) < kDivisorFloor)
                    decided = phy::qam_nearest(cplx(1.0, 1.0), cfg.modulation);
            }
            hq[k] = rx.r[q][k] / decided;
        }
        prev = &hq;
    }
    return out;
}

EstimateSeries sta_estimate(const EstimateSeries& in, double alpha, double beta,
                            const std::optional<cvec>& h_init) {
    if (alpha < 1.0) throw ConfigError("sta: alpha must be >= 1");
    if (beta < 0.0) throw ConfigError("sta: beta must be >= 0");
    const int I = static_cast<int>(in.h_hat.size());
    const int K_on = I > 0 ? static_cast<int>(in.h_hat[0].size()) : 0;
    if (h_init && static_cast<int>(h_init->size()) != K_on)
        throw SimError("sta: h_init length mismatch");

    EstimateSeries out;
    out.scheme = "STA";
    out.params = StaParams{alpha, beta};
    out.h_hat.assign(I, cvec(K_on));
    if (I == 0) return out;

    const int w = static_cast<int>(std::floor(beta));
    cmat fd(I, cvec(K_on));
    for (int q = 0; q < I; ++q) {
        for (int k = 0; k < K_on; ++k) {
            const int lo = std::max(0, k - w);
            const int hi = std::min(K_on - 1, k + w);
            cplx acc(0.0, 0.0);
            for (int m = lo; m <= hi; ++m) acc += in.h_hat[q][m];
            fd[q][k] = acc / static_cast<double>(hi - lo + 1);
        }
    }

    const double lam = 1.0 - 1.0 / alpha;
    cvec prev = h_init ? *h_init : fd[0];
    for (int q = 0; q < I; ++q) {
        for (int k = 0; k < K_on; ++k)
            out.h_hat[q][k] = lam * prev[k] + (1.0 / alpha) * fd[q][k];
        prev = out.h_hat[q];
    }
    return out;
}

} // namespace chestkit::est
