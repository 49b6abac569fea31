// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PIPELINE_REPORTS_HPP
#define CHESTKIT_PIPELINE_REPORTS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "chestkit/lrp/relevance.hpp"
#include "chestkit/pipeline/evaluate.hpp"
#include "chestkit/prune/search.hpp"

namespace chestkit::pipeline {

struct FlopsRow {
    std::string scenario;
    std::string scheme;
    std::int64_t flops = 0;
    double reduction_pct = 0.0;
};

// CSV schemas (one header line each):
//   relevance: subcarrier_index,relevance,category
//   neurons:   layer,neuron,relevance
//   ber:       scheme,snr_db,ber,bits
//   flops:     scenario,scheme,flops,reduction_pct
//   trace:     tau,percentile,val_loss,ber,flops,accepted
void write_relevance_csv(const std::filesystem::path& path, const lrp::GlobalRelevance& g,
                         const lrp::SubcarrierTaxonomy& tax);
void write_neuron_csv(const std::filesystem::path& path, const lrp::GlobalRelevance& g);
void write_ber_csv(const std::filesystem::path& path, const std::vector<BerRow>& rows);
void write_flops_csv(const std::filesystem::path& path, const std::vector<FlopsRow>& rows);
void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<prune::TraceRow>& trace);
void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& losses);

nlohmann::json search_result_to_json(const prune::SearchResult& result);
void write_search_result(const std::filesystem::path& path,
                         const prune::SearchResult& result);

// Fixed-format double -> string used by every CSV writer, so identical
// inputs produce identical bytes.
std::string fmt_double(double v);

} // namespace chestkit::pipeline

#endif
