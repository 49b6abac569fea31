// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).
//
// chestkit command line: staged OFDM channel-estimation experiments.
//   simulate  generate the training dataset
//   train     fit the denoiser on a dataset
//   explain   relevance scores and subcarrier taxonomy for a checkpoint
//   prune     joint input/architecture grid search with the BER gate
//   evaluate  BER sweep of the conventional and denoised estimators
//   report    FLOPs accounting for the selected masks
//   pipeline  all of the above in one run
//
// Exit codes: 0 ok, 2 bad config, 3 training diverged, 4 no pruning
// candidate passed the gate.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"

#include "chestkit/errors.hpp"
#include "chestkit/pipeline/pipeline.hpp"

namespace {

using namespace chestkit;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitNoImprovement = 4;

struct Paths {
    std::string config;
    std::string outdir = "out";
    std::string dataset;
    std::string model;
    std::string pruned;
    std::string search_result;
};

pipeline::ExperimentConfig load(const Paths& p) {
    auto cfg = pipeline::load_config(p.config);
    std::filesystem::create_directories(p.outdir);
    return cfg;
}

std::filesystem::path default_in(const Paths& p, const std::string& explicit_path,
                                 const char* name) {
    if (!explicit_path.empty()) return explicit_path;
    return std::filesystem::path(p.outdir) / name;
}

pipeline::Dataset dataset_for(const Paths& p) {
    return pipeline::load_dataset(default_in(p, p.dataset, "dataset.bin"));
}

fnn::ModelParams model_for(const Paths& p) {
    return fnn::load_checkpoint(default_in(p, p.model, "model.ckpt")).model;
}

int run_prune(const pipeline::ExperimentConfig& cfg, const Paths& p) {
    const auto ds = dataset_for(p);
    const auto model = model_for(p);
    const auto relevance = pipeline::stage_explain(cfg, model, ds, p.outdir);
    const auto result = pipeline::stage_prune(cfg, model, ds, relevance, p.outdir);
    std::printf("best: flops=%lld reduction=%.2f%% ber=%.6g val_loss=%.6g%s\n",
                static_cast<long long>(result.flops), result.reduction_pct, result.ber,
                result.val_loss, result.no_improvement ? " (no improvement)" : "");
    return result.no_improvement ? kExitNoImprovement : kExitOk;
}

int run_evaluate(const pipeline::ExperimentConfig& cfg, const Paths& p) {
    const auto model = model_for(p);
    const auto pruned_path = default_in(p, p.pruned, "pruned.ckpt");
    std::vector<pipeline::BerRow> rows;
    if (std::filesystem::exists(pruned_path)) {
        const auto ck = fnn::load_checkpoint(pruned_path);
        fnn::Mask m_in;
        if (ck.meta.contains("masks"))
            m_in = ck.meta["masks"]["input"].get<fnn::Mask>();
        const bool full_width = ck.model.input_size() == model.input_size();
        rows = pipeline::ber_sweep(cfg, model, &ck.model,
                                   full_width || m_in.empty() ? nullptr : &m_in);
    } else {
        rows = pipeline::ber_sweep(cfg, model, nullptr, nullptr);
    }
    pipeline::write_ber_csv(std::filesystem::path(p.outdir) / "ber.csv", rows);
    for (const auto& r : rows)
        std::printf("%-16s %6.1f dB  ber=%.6g  (%lld bits)\n", r.scheme.c_str(), r.snr_db,
                    r.ber, static_cast<long long>(r.bits));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM channel-estimation denoiser with relevance-driven pruning"};
    app.require_subcommand(1);

    Paths paths;
    double tau_min = -1.0, tau_max = -1.0, tau_step = 0.0;
    std::vector<double> percentiles;
    double ref_snr = std::numeric_limits<double>::quiet_NaN();
    double ber_target = std::numeric_limits<double>::quiet_NaN();
    int retrain_epochs = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_out = true) {
        cmd->add_option("-c,--config", paths.config, "experiment config (JSON)")
            ->required();
        if (needs_out)
            cmd->add_option("-o,--out", paths.outdir, "output directory (default: out)");
    };

    auto* sim = app.add_subcommand("simulate", "generate the training dataset");
    add_common(sim);

    auto* train = app.add_subcommand("train", "train the denoiser");
    add_common(train);
    train->add_option("--dataset", paths.dataset, "dataset file (default: <out>/dataset.bin)");

    auto* explain = app.add_subcommand("explain", "relevance scores for a checkpoint");
    add_common(explain);
    explain->add_option("--dataset", paths.dataset, "dataset file");
    explain->add_option("--model", paths.model, "checkpoint (default: <out>/model.ckpt)");

    auto* prune_cmd = app.add_subcommand("prune", "joint input/architecture grid search");
    add_common(prune_cmd);
    prune_cmd->add_option("--dataset", paths.dataset, "dataset file");
    prune_cmd->add_option("--model", paths.model, "checkpoint");
    prune_cmd->add_option("--tau-min", tau_min, "input threshold grid start");
    prune_cmd->add_option("--tau-max", tau_max, "input threshold grid end");
    prune_cmd->add_option("--tau-step", tau_step, "input threshold grid step");
    prune_cmd->add_option("--percentiles", percentiles, "architecture pruning percentiles");
    prune_cmd->add_option("--ref-snr", ref_snr, "BER gate reference SNR (dB)");
    prune_cmd->add_option("--ber-target", ber_target,
                          "BER gate ceiling (default: unpruned model BER)");
    prune_cmd->add_option("--retrain-epochs", retrain_epochs, "epochs per grid cell");

    auto* evaluate = app.add_subcommand("evaluate", "BER sweep over the SNR grid");
    add_common(evaluate);
    evaluate->add_option("--model", paths.model, "full checkpoint");
    evaluate->add_option("--pruned", paths.pruned, "pruned checkpoint (optional)");

    auto* report = app.add_subcommand("report", "FLOPs accounting for a search result");
    add_common(report);
    report->add_option("--model", paths.model, "checkpoint");
    report->add_option("--search-result", paths.search_result,
                       "search_result.json (default: <out>/search_result.json)");

    auto* pipe = app.add_subcommand("pipeline", "run every stage");
    add_common(pipe);

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = load(paths);
        // command-line overrides for the search grid
        if (tau_min >= 0.0) {
            cfg.search.taus.clear();
            if (tau_step > 0.0 && tau_max >= tau_min)
                for (double t = tau_min; t <= tau_max + 1e-12; t += tau_step)
                    cfg.search.taus.push_back(t);
            else
                cfg.search.taus.push_back(tau_min);
        }
        if (!percentiles.empty()) cfg.search.percentiles = percentiles;
        if (!std::isnan(ref_snr)) cfg.search.ref_snr_db = ref_snr;
        if (!std::isnan(ber_target)) cfg.search.ber_target = ber_target;
        if (retrain_epochs >= 0) cfg.retrain_epochs = retrain_epochs;

        if (sim->parsed()) {
            const auto ds = pipeline::stage_simulate(cfg, paths.outdir);
            std::printf("dataset: %zu train / %zu val samples\n", ds.train.size(),
                        ds.val.size());
            return kExitOk;
        }
        if (train->parsed()) {
            const auto ds = dataset_for(paths);
            const auto model = pipeline::stage_train(cfg, ds, paths.outdir);
            std::printf("trained %zu parameters, val_loss=%.6g\n", model.param_count(),
                        fnn::evaluate_loss(model, ds.val));
            return kExitOk;
        }
        if (explain->parsed()) {
            const auto ds = dataset_for(paths);
            const auto model = model_for(paths);
            const auto g = pipeline::stage_explain(cfg, model, ds, paths.outdir);
            const auto tax = lrp::categorize(g);
            std::printf("taxonomy: %zu reliable, %zu contributing, %zu neutral, %zu harmful\n",
                        tax.reliable.size(), tax.contributing.size(), tax.neutral.size(),
                        tax.harmful.size());
            return kExitOk;
        }
        if (prune_cmd->parsed()) return run_prune(cfg, paths);
        if (evaluate->parsed()) return run_evaluate(cfg, paths);
        if (report->parsed()) {
            const auto model = model_for(paths);
            // rebuild the search result facts needed for the report
            std::ifstream is(default_in(paths, paths.search_result, "search_result.json"));
            if (!is) throw ConfigError("report: missing search_result.json");
            nlohmann::json j;
            is >> j;
            prune::SearchResult sr;
            sr.best_masks.input = j["masks"]["input"].get<fnn::Mask>();
            for (const auto& h : j["masks"]["hidden"])
                sr.best_masks.hidden.push_back(h.get<fnn::Mask>());
            sr.flops = j["flops"].get<std::int64_t>();
            sr.baseline_flops = j["baseline_flops"].get<std::int64_t>();
            sr.reduction_pct = j["reduction_pct"].get<double>();
            const auto rows = pipeline::stage_report(cfg, sr, paths.outdir);
            for (const auto& r : rows)
                std::printf("%-10s %-14s %8lld  %6.2f%%\n", r.scenario.c_str(),
                            r.scheme.c_str(), static_cast<long long>(r.flops),
                            r.reduction_pct);
            return kExitOk;
        }
        if (pipe->parsed()) {
            const auto result = pipeline::run_pipeline(cfg, paths.outdir);
            std::printf("pipeline done: flops %lld -> %lld (%.2f%% reduction)%s\n",
                        static_cast<long long>(result.search.baseline_flops),
                        static_cast<long long>(result.search.flops),
                        result.search.reduction_pct,
                        result.search.no_improvement ? " [no improvement]" : "");
            return result.search.no_improvement ? kExitNoImprovement : kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const TrainingDiverged& e) {
        std::cerr << "training diverged: " << e.what() << '\n';
        return kExitDiverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
