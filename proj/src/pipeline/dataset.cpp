// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/pipeline/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "chestkit/errors.hpp"
#include "chestkit/fnn/model.hpp"

namespace chestkit::pipeline {

namespace {

// seed stream tags: training frames use low stream ids, evaluation frames
// live far away so the two frame populations never share randomness
constexpr std::uint64_t kEvalStreamBase = 1ULL << 40;

constexpr char kMagic[8] = {'C', 'K', 'D', 'S', 'E', 'T', 'v', '1'};

void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint64_t read_u64(std::istream& is) {
    std::uint64_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw Error("dataset: truncated file");
    return v;
}

void write_samples(std::ostream& os, const std::vector<fnn::Sample>& samples) {
    for (const fnn::Sample& s : samples) {
        os.write(reinterpret_cast<const char*>(s.input.data()),
                 static_cast<std::streamsize>(s.input.size() * sizeof(double)));
        os.write(reinterpret_cast<const char*>(s.label.data()),
                 static_cast<std::streamsize>(s.label.size() * sizeof(double)));
    }
}

void read_samples(std::istream& is, std::vector<fnn::Sample>& samples, std::size_t n,
                  std::size_t in_dim, std::size_t out_dim) {
    samples.resize(n);
    for (fnn::Sample& s : samples) {
        s.input.resize(in_dim);
        s.label.resize(out_dim);
        if (!is.read(reinterpret_cast<char*>(s.input.data()),
                     static_cast<std::streamsize>(in_dim * sizeof(double))) ||
            !is.read(reinterpret_cast<char*>(s.label.data()),
                     static_cast<std::streamsize>(out_dim * sizeof(double))))
            throw Error("dataset: truncated sample block");
    }
}

} // namespace

LinkRun simulate_link(const ExperimentConfig& cfg, double snr_db, std::uint64_t stream) {
    LinkRun run;
    run.tx = phy::build_frame(cfg.frame, derive_seed(cfg.seeds.data, 3 * stream));
    const auto chan = phy::realize_channel(
        cfg.channel, static_cast<std::size_t>(cfg.frame.samples_per_frame()),
        derive_seed(cfg.seeds.data, 3 * stream + 1), cfg.frame.sample_rate);
    run.rx = phy::transmit(run.tx, chan, snr_db, derive_seed(cfg.seeds.data, 3 * stream + 2));
    const cvec h_init = est::pilot_ls_init(run.rx, cfg.frame);
    run.dpa = est::dpa_estimate(run.rx, cfg.frame, h_init);
    run.sta = est::sta_estimate(run.dpa, cfg.sta.alpha, cfg.sta.beta, h_init);
    return run;
}

Dataset generate_dataset(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n_frames = cfg.frames_in_dataset();
    const int n_train_frames =
        std::max(1, static_cast<int>(cfg.train.split * n_frames + 0.5));

    Dataset ds;
    for (int f = 0; f < n_frames; ++f) {
        const double snr = cfg.snr_grid_db[f % cfg.snr_grid_db.size()];
        const LinkRun run = simulate_link(cfg, snr, static_cast<std::uint64_t>(f));
        auto& sink = f < n_train_frames ? ds.train : ds.val;
        for (int q = 0; q < cfg.frame.I; ++q)
            sink.push_back({fnn::vectorize(run.sta.h_hat[q]),
                            fnn::vectorize(run.rx.h_true[q])});
    }
    return ds;
}

std::vector<LinkRun> generate_eval_frames(const ExperimentConfig& cfg, double snr_db,
                                          int n_frames) {
    std::vector<LinkRun> out;
    out.reserve(n_frames);
    // fold the SNR point into the stream so each point gets its own frames
    const std::uint64_t snr_tag =
        static_cast<std::uint64_t>(static_cast<std::int64_t>(snr_db * 1000.0) + (1 << 20));
    for (int f = 0; f < n_frames; ++f)
        out.push_back(simulate_link(cfg, snr_db,
                                    kEvalStreamBase + snr_tag * 4096 + f));
    return out;
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds) {
    if (ds.train.empty()) throw Error("dataset: nothing to save");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("dataset: cannot open " + path.string() + " for writing");
    os.write(kMagic, sizeof(kMagic));
    write_u64(os, ds.train.front().input.size());
    write_u64(os, ds.train.front().label.size());
    write_u64(os, ds.train.size());
    write_u64(os, ds.val.size());
    write_samples(os, ds.train);
    write_samples(os, ds.val);
    if (!os) throw Error("dataset: write failed for " + path.string());
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("dataset: cannot open " + path.string());
    char magic[8] = {};
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw Error("dataset: bad magic in " + path.string());
    const std::size_t in_dim = read_u64(is);
    const std::size_t out_dim = read_u64(is);
    const std::size_t n_train = read_u64(is);
    const std::size_t n_val = read_u64(is);
    Dataset ds;
    read_samples(is, ds.train, n_train, in_dim, out_dim);
    read_samples(is, ds.val, n_val, in_dim, out_dim);
    return ds;
}

} // namespace chestkit::pipeline
