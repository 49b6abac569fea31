// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include "chestkit/errors.hpp"

namespace chestkit::pipeline {

namespace {

void write_config(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    std::ofstream os(outdir / "config.json", std::ios::trunc);
    if (!os) throw Error("pipeline: cannot write config.json");
    os << config_to_json(cfg).dump(2) << '\n';
}

nlohmann::json base_meta(const ExperimentConfig& cfg) {
    nlohmann::json meta;
    meta["config"] = config_to_json(cfg);
    meta["seeds"] = {{"data", cfg.seeds.data},
                     {"model", cfg.seeds.model},
                     {"search", cfg.seeds.search}};
    return meta;
}

} // namespace

Dataset stage_simulate(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    Dataset ds = generate_dataset(cfg);
    save_dataset(outdir / "dataset.bin", ds);
    return ds;
}

fnn::ModelParams stage_train(const ExperimentConfig& cfg, const Dataset& ds,
                             const std::filesystem::path& outdir) {
    fnn::ModelParams model = fnn::init_model(cfg.layer_sizes(), cfg.seeds.model);
    fnn::TrainConfig tc = cfg.train;
    tc.seed = cfg.seeds.model;
    const fnn::TrainResult tr = fnn::train(model, ds.train, tc);

    nlohmann::json meta = base_meta(cfg);
    meta["stage"] = "train";
    meta["final_train_loss"] = tr.loss_history.empty() ? 0.0 : tr.loss_history.back();
    meta["val_loss"] = fnn::evaluate_loss(model, ds.val);
    fnn::save_checkpoint(outdir / "model.ckpt", model, meta);
    write_loss_csv(outdir / "training_loss.csv", tr.loss_history);
    return model;
}

lrp::GlobalRelevance stage_explain(const ExperimentConfig& cfg,
                                   const fnn::ModelParams& model, const Dataset& ds,
                                   const std::filesystem::path& outdir) {
    const std::size_t n =
        std::min(ds.train.size(), static_cast<std::size_t>(cfg.lrp.n_samples));
    if (n == 0) throw ConfigError("explain: no samples available");
    const std::span<const fnn::Sample> subset(ds.train.data(), n);
    const lrp::GlobalRelevance g = lrp::aggregate(model, subset, cfg.lrp.epsilon);
    const lrp::SubcarrierTaxonomy tax = lrp::categorize(g);
    write_relevance_csv(outdir / "relevance_subcarriers.csv", g, tax);
    write_neuron_csv(outdir / "relevance_neurons.csv", g);
    return g;
}

prune::BerEvaluator make_ber_gate(const ExperimentConfig& cfg) {
    auto frames = std::make_shared<std::vector<LinkRun>>(
        generate_eval_frames(cfg, cfg.search.ref_snr_db, cfg.eval_frames));
    return [frames](const fnn::ModelParams& model, const fnn::Mask& m_in) {
        const bool sliced = static_cast<int>(m_in.size()) != model.input_size() ||
                            std::count(m_in.begin(), m_in.end(), 1) !=
                                static_cast<long>(m_in.size());
        std::optional<fnn::Mask> m;
        if (sliced) m = m_in;
        return ber_over_frames(*frames, [&](const LinkRun& run) {
            return fnn_estimate(model, run.sta, m);
        });
    };
}

prune::SearchResult stage_prune(const ExperimentConfig& cfg, const fnn::ModelParams& model,
                                const Dataset& ds, const lrp::GlobalRelevance& relevance,
                                const std::filesystem::path& outdir) {
    prune::RetrainConfig rc;
    rc.epochs = cfg.effective_retrain_epochs();
    rc.lr = cfg.train.lr;
    rc.batch_size = cfg.train.batch_size;
    rc.seed = cfg.seeds.search;
    rc.warm_start = cfg.warm_start;

    prune::SearchResult result = prune::grid_search(model, ds.train, ds.val, relevance,
                                                    cfg.search, rc, make_ber_gate(cfg));

    nlohmann::json meta = base_meta(cfg);
    meta["stage"] = "prune";
    meta["masks"]["input"] = result.best_masks.input;
    meta["masks"]["hidden"] = result.best_masks.hidden;
    meta["no_improvement"] = result.no_improvement;
    fnn::save_checkpoint(outdir / "pruned.ckpt", result.best_model, meta);
    write_search_result(outdir / "search_result.json", result);
    write_trace_csv(outdir / "search_trace.csv", result.trace);
    return result;
}

std::vector<BerRow> stage_evaluate(const ExperimentConfig& cfg,
                                   const fnn::ModelParams& full,
                                   const prune::SearchResult& search,
                                   const std::filesystem::path& outdir) {
    const fnn::Mask* m_in = search.no_improvement ? nullptr : &search.best_masks.input;
    const fnn::ModelParams* pruned = &search.best_model;
    const std::vector<BerRow> rows = ber_sweep(cfg, full, pruned, m_in);
    write_ber_csv(outdir / "ber.csv", rows);
    return rows;
}

std::vector<FlopsRow> stage_report(const ExperimentConfig& cfg,
                                   const prune::SearchResult& search,
                                   const std::filesystem::path& outdir) {
    const std::string scenario = cfg.channel.name + "-" + phy::to_string(cfg.frame.modulation);
    const std::vector<int> sizes = cfg.layer_sizes();

    std::vector<FlopsRow> rows;
    rows.push_back({scenario, "baseline", search.baseline_flops,
                    prune::reduction_pct(search.baseline_flops, search.baseline_flops)});

    // input filtering alone, full architecture: the intermediate reference
    prune::MaskPair input_only = prune::full_masks(sizes);
    input_only.input = search.best_masks.input;
    const std::int64_t c_input = prune::flops(input_only, sizes);
    rows.push_back({scenario, "input-filter", c_input,
                    prune::reduction_pct(c_input, search.baseline_flops)});

    rows.push_back({scenario, "joint-pruned", search.flops, search.reduction_pct});
    write_flops_csv(outdir / "flops.csv", rows);
    return rows;
}

PipelineResult run_pipeline(const ExperimentConfig& cfg,
                            const std::filesystem::path& outdir) {
    cfg.validate();
    std::filesystem::create_directories(outdir);
    write_config(cfg, outdir);

    PipelineResult out;
    // tag failures with the stage name without erasing the error type
    auto staged = [](const char* stage, auto&& fn) {
        try {
            return fn();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(stage) + ": " + e.what());
        } catch (const TrainingDiverged& e) {
            throw TrainingDiverged(std::string(stage) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(std::string(stage) + ": " + e.what());
        }
    };

    const Dataset ds =
        staged("simulate", [&] { return stage_simulate(cfg, outdir); });
    out.model = staged("train", [&] { return stage_train(cfg, ds, outdir); });
    out.relevance =
        staged("explain", [&] { return stage_explain(cfg, out.model, ds, outdir); });
    out.search = staged(
        "prune", [&] { return stage_prune(cfg, out.model, ds, out.relevance, outdir); });
    out.ber = staged(
        "evaluate", [&] { return stage_evaluate(cfg, out.model, out.search, outdir); });
    out.flops =
        staged("report", [&] { return stage_report(cfg, out.search, outdir); });
    return out;
}

} // namespace chestkit::pipeline
