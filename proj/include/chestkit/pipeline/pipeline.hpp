// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PIPELINE_PIPELINE_HPP
#define CHESTKIT_PIPELINE_PIPELINE_HPP

#include <filesystem>

#include "chestkit/fnn/checkpoint.hpp"
#include "chestkit/pipeline/dataset.hpp"
#include "chestkit/pipeline/evaluate.hpp"
#include "chestkit/pipeline/reports.hpp"

namespace chestkit::pipeline {

// Individual stages; each one both returns its product and persists it
// under outdir with the config embedded for provenance.
Dataset stage_simulate(const ExperimentConfig& cfg, const std::filesystem::path& outdir);

fnn::ModelParams stage_train(const ExperimentConfig& cfg, const Dataset& ds,
                             const std::filesystem::path& outdir);

lrp::GlobalRelevance stage_explain(const ExperimentConfig& cfg,
                                   const fnn::ModelParams& model, const Dataset& ds,
                                   const std::filesystem::path& outdir);

prune::SearchResult stage_prune(const ExperimentConfig& cfg, const fnn::ModelParams& model,
                                const Dataset& ds, const lrp::GlobalRelevance& relevance,
                                const std::filesystem::path& outdir);

std::vector<BerRow> stage_evaluate(const ExperimentConfig& cfg,
                                   const fnn::ModelParams& full,
                                   const prune::SearchResult& search,
                                   const std::filesystem::path& outdir);

std::vector<FlopsRow> stage_report(const ExperimentConfig& cfg,
                                   const prune::SearchResult& search,
                                   const std::filesystem::path& outdir);

struct PipelineResult {
    fnn::ModelParams model;
    lrp::GlobalRelevance relevance;
    prune::SearchResult search;
    std::vector<BerRow> ber;
    std::vector<FlopsRow> flops;
};

// generate -> train -> explain -> prune -> evaluate -> report. Stage
// failures are rethrown with the stage name prefixed. Artifacts:
// config.json, dataset.bin, model.ckpt, training_loss.csv,
// relevance_subcarriers.csv, relevance_neurons.csv, pruned.ckpt,
// search_result.json, search_trace.csv, ber.csv, flops.csv.
PipelineResult run_pipeline(const ExperimentConfig& cfg,
                            const std::filesystem::path& outdir);

// The grid-search BER gate used by stage_prune: candidate BER over a
// fixed held-out frame set at the grid's reference SNR.
prune::BerEvaluator make_ber_gate(const ExperimentConfig& cfg);

} // namespace chestkit::pipeline

#endif
