// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/pipeline/config.hpp"

#include <algorithm>
#include <fstream>

#include "chestkit/errors.hpp"

namespace chestkit::pipeline {

namespace {

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

void ExperimentConfig::validate() const {
    frame.validate();
    channel.validate();
    train.validate();
    search.validate();
    if (snr_grid_db.empty()) throw ConfigError("config: empty snr_grid_db");
    if (!std::is_sorted(snr_grid_db.begin(), snr_grid_db.end()))
        throw ConfigError("config: snr_grid_db must be ascending");
    if (hidden_sizes.empty()) throw ConfigError("config: need at least one hidden layer");
    for (int h : hidden_sizes)
        if (h <= 0) throw ConfigError("config: degenerate hidden size");
    if (lrp.epsilon <= 0.0) throw ConfigError("config: lrp.epsilon must be positive");
    if (lrp.n_samples < 1) throw ConfigError("config: lrp.n_samples must be >= 1");
    if (dataset_size < frame.I)
        throw ConfigError("config: dataset_size smaller than one frame");
    if (eval_frames < 1) throw ConfigError("config: eval_frames must be >= 1");
    if (retrain_epochs < 0) throw ConfigError("config: negative retrain_epochs");
}

int ExperimentConfig::effective_retrain_epochs() const {
    if (retrain_epochs > 0) return retrain_epochs;
    return std::max(1, train.epochs / 5);
}

std::vector<int> ExperimentConfig::layer_sizes() const {
    std::vector<int> sizes;
    sizes.push_back(2 * frame.K_on);
    for (int h : hidden_sizes) sizes.push_back(h);
    sizes.push_back(2 * frame.K_on);
    return sizes;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("frame")) {
        const auto& f = j.at("frame");
        maybe(f, "K", cfg.frame.K);
        maybe(f, "K_on", cfg.frame.K_on);
        maybe(f, "K_p", cfg.frame.K_p);
        maybe(f, "K_d", cfg.frame.K_d);
        maybe(f, "K_n", cfg.frame.K_n);
        maybe(f, "I", cfg.frame.I);
        maybe(f, "cp_len", cfg.frame.cp_len);
        maybe(f, "pilot_indices", cfg.frame.pilot_indices);
        maybe(f, "sample_rate", cfg.frame.sample_rate);
        if (f.contains("modulation"))
            cfg.frame.modulation =
                phy::modulation_from_string(f.at("modulation").get<std::string>());
    }
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        if (c.contains("name")) {
            const auto name = c.at("name").get<std::string>();
            if (name == "LF")
                cfg.channel = phy::lf_profile();
            else if (name == "HF")
                cfg.channel = phy::hf_profile();
            else
                cfg.channel.name = name;
        }
        maybe(c, "tap_delays", cfg.channel.tap_delays);
        maybe(c, "tap_powers", cfg.channel.tap_powers);
        maybe(c, "f_d", cfg.channel.f_d);
    }
    maybe(j, "snr_grid_db", cfg.snr_grid_db);
    if (j.contains("sta")) {
        maybe(j.at("sta"), "alpha", cfg.sta.alpha);
        maybe(j.at("sta"), "beta", cfg.sta.beta);
    }
    if (j.contains("train")) {
        const auto& t = j.at("train");
        maybe(t, "lr", cfg.train.lr);
        maybe(t, "epochs", cfg.train.epochs);
        maybe(t, "batch_size", cfg.train.batch_size);
        maybe(t, "split", cfg.train.split);
        maybe(t, "hidden_sizes", cfg.hidden_sizes);
    }
    if (j.contains("lrp")) {
        maybe(j.at("lrp"), "epsilon", cfg.lrp.epsilon);
        maybe(j.at("lrp"), "n_samples", cfg.lrp.n_samples);
    }
    if (j.contains("search")) {
        const auto& s = j.at("search");
        if (s.contains("taus")) cfg.search.taus = s.at("taus").get<std::vector<double>>();
        maybe(s, "percentiles", cfg.search.percentiles);
        maybe(s, "ref_snr_db", cfg.search.ref_snr_db);
        if (s.contains("ber_target") && !s.at("ber_target").is_null())
            cfg.search.ber_target = s.at("ber_target").get<double>();
        maybe(s, "retrain_epochs", cfg.retrain_epochs);
        maybe(s, "warm_start", cfg.warm_start);
    }
    if (j.contains("seeds")) {
        maybe(j.at("seeds"), "data", cfg.seeds.data);
        maybe(j.at("seeds"), "model", cfg.seeds.model);
        maybe(j.at("seeds"), "search", cfg.seeds.search);
    }
    maybe(j, "dataset_size", cfg.dataset_size);
    maybe(j, "eval_frames", cfg.eval_frames);
    cfg.validate();
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["frame"] = {{"K", cfg.frame.K},
                  {"K_on", cfg.frame.K_on},
                  {"K_p", cfg.frame.K_p},
                  {"K_d", cfg.frame.K_d},
                  {"K_n", cfg.frame.K_n},
                  {"I", cfg.frame.I},
                  {"cp_len", cfg.frame.cp_len},
                  {"pilot_indices", cfg.frame.pilot_indices},
                  {"modulation", phy::to_string(cfg.frame.modulation)},
                  {"sample_rate", cfg.frame.sample_rate}};
    j["channel"] = {{"name", cfg.channel.name},
                    {"tap_delays", cfg.channel.tap_delays},
                    {"tap_powers", cfg.channel.tap_powers},
                    {"f_d", cfg.channel.f_d}};
    j["snr_grid_db"] = cfg.snr_grid_db;
    j["sta"] = {{"alpha", cfg.sta.alpha}, {"beta", cfg.sta.beta}};
    j["train"] = {{"lr", cfg.train.lr},
                  {"epochs", cfg.train.epochs},
                  {"batch_size", cfg.train.batch_size},
                  {"split", cfg.train.split},
                  {"hidden_sizes", cfg.hidden_sizes}};
    j["lrp"] = {{"epsilon", cfg.lrp.epsilon}, {"n_samples", cfg.lrp.n_samples}};
    j["search"] = {{"taus", cfg.search.taus},
                   {"percentiles", cfg.search.percentiles},
                   {"ref_snr_db", cfg.search.ref_snr_db},
                   {"retrain_epochs", cfg.retrain_epochs},
                   {"warm_start", cfg.warm_start}};
    if (cfg.search.ber_target)
        j["search"]["ber_target"] = *cfg.search.ber_target;
    else
        j["search"]["ber_target"] = nullptr;
    j["seeds"] = {{"data", cfg.seeds.data},
                  {"model", cfg.seeds.model},
                  {"search", cfg.seeds.search}};
    j["dataset_size"] = cfg.dataset_size;
    j["eval_frames"] = cfg.eval_frames;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

} // namespace chestkit::pipeline
