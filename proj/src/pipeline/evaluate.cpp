// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/pipeline/evaluate.hpp"

#include "chestkit/errors.hpp"
#include "chestkit/phy/qam.hpp"

namespace chestkit::pipeline {

void accumulate_ber(const phy::OfdmFrame& tx, const phy::ReceivedFrame& rx,
                    const cmat& h_est, BerCount& count) {
    const phy::FrameConfig& cfg = tx.cfg;
    if (h_est.size() != rx.r.size())
        throw SimError("ber: estimate series length mismatch");
    const std::vector<int> data_idx = cfg.data_indices();

    cvec equalized(data_idx.size());
    for (std::size_t q = 0; q < rx.r.size(); ++q) {
        for (std::size_t d = 0; d < data_idx.size(); ++d) {
            const int k = data_idx[d];
            cplx h = h_est[q][k];
            if (std::abs(h) < 1e-12) h = cplx(1e-12, 0.0);
            equalized[d] = rx.r[q][k] / h;
        }
        const Bits decided = phy::qam_demap(equalized, cfg.modulation);
        const Bits& sent = tx.tx_bits[q];
        for (std::size_t b = 0; b < decided.size(); ++b)
            count.errors += decided[b] != sent[b] ? 1 : 0;
        count.bits += static_cast<std::int64_t>(decided.size());
    }
}

cmat fnn_estimate(const fnn::ModelParams& model, const est::EstimateSeries& sta,
                  const std::optional<fnn::Mask>& m_in) {
    cmat out(sta.h_hat.size());
    for (std::size_t q = 0; q < sta.h_hat.size(); ++q) {
        std::vector<double> in = fnn::vectorize(sta.h_hat[q]);
        if (m_in) in = fnn::apply_input_mask(in, *m_in);
        out[q] = fnn::devectorize(fnn::forward(model, in));
    }
    return out;
}

double ber_over_frames(const std::vector<LinkRun>& frames,
                       const std::function<cmat(const LinkRun&)>& estimator) {
    BerCount count;
    for (const LinkRun& run : frames)
        accumulate_ber(run.tx, run.rx, estimator(run), count);
    return count.ber();
}

std::vector<BerRow> ber_sweep(const ExperimentConfig& cfg, const fnn::ModelParams& full,
                              const fnn::ModelParams* pruned,
                              const fnn::Mask* pruned_m_in) {
    std::vector<BerRow> rows;
    for (double snr : cfg.snr_grid_db) {
        const std::vector<LinkRun> frames =
            generate_eval_frames(cfg, snr, cfg.eval_frames);
        const std::int64_t bits = static_cast<std::int64_t>(frames.size()) * cfg.frame.I *
                                  cfg.frame.bits_per_frame_symbol();

        BerCount dpa, sta, fnn_full, fnn_pruned;
        for (const LinkRun& run : frames) {
            accumulate_ber(run.tx, run.rx, run.dpa.h_hat, dpa);
            accumulate_ber(run.tx, run.rx, run.sta.h_hat, sta);
            accumulate_ber(run.tx, run.rx, fnn_estimate(full, run.sta), fnn_full);
            if (pruned) {
                std::optional<fnn::Mask> m;
                if (pruned_m_in) m = *pruned_m_in;
                accumulate_ber(run.tx, run.rx, fnn_estimate(*pruned, run.sta, m),
                               fnn_pruned);
            }
        }
        rows.push_back({"DPA", snr, dpa.ber(), bits});
        rows.push_back({"STA", snr, sta.ber(), bits});
        rows.push_back({"STA-FNN-full", snr, fnn_full.ber(), bits});
        if (pruned) rows.push_back({"STA-FNN-pruned", snr, fnn_pruned.ber(), bits});
    }
    return rows;
}

} // namespace chestkit::pipeline
