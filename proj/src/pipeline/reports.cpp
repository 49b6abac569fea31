// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/pipeline/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "chestkit/errors.hpp"

namespace chestkit::pipeline {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw Error("report: cannot open " + path.string() + " for writing");
    return os;
}

std::string category_name(int k, const lrp::SubcarrierTaxonomy& tax) {
    auto contains = [k](const std::vector<int>& v) {
        return std::find(v.begin(), v.end(), k) != v.end();
    };
    if (contains(tax.reliable)) return "reliable";
    if (contains(tax.contributing)) return "contributing";
    if (contains(tax.neutral)) return "neutral";
    return "harmful";
}

} // namespace

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_relevance_csv(const std::filesystem::path& path, const lrp::GlobalRelevance& g,
                         const lrp::SubcarrierTaxonomy& tax) {
    auto os = open_out(path);
    os << "subcarrier_index,relevance,category\n";
    for (std::size_t k = 0; k < g.r_sub.size(); ++k)
        os << k << ',' << fmt_double(g.r_sub[k]) << ','
           << category_name(static_cast<int>(k), tax) << '\n';
}

void write_neuron_csv(const std::filesystem::path& path, const lrp::GlobalRelevance& g) {
    auto os = open_out(path);
    os << "layer,neuron,relevance\n";
    for (std::size_t l = 0; l < g.r_arch.size(); ++l)
        for (std::size_t j = 0; j < g.r_arch[l].size(); ++j)
            os << (l + 1) << ',' << j << ',' << fmt_double(g.r_arch[l][j]) << '\n';
}

void write_ber_csv(const std::filesystem::path& path, const std::vector<BerRow>& rows) {
    auto os = open_out(path);
    os << "scheme,snr_db,ber,bits\n";
    for (const BerRow& r : rows)
        os << r.scheme << ',' << fmt_double(r.snr_db) << ',' << fmt_double(r.ber) << ','
           << r.bits << '\n';
}

void write_flops_csv(const std::filesystem::path& path, const std::vector<FlopsRow>& rows) {
    auto os = open_out(path);
    os << "scenario,scheme,flops,reduction_pct\n";
    for (const FlopsRow& r : rows) {
        char pct[16];
        std::snprintf(pct, sizeof(pct), "%.2f", r.reduction_pct);
        os << r.scenario << ',' << r.scheme << ',' << r.flops << ',' << pct << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path,
                     const std::vector<prune::TraceRow>& trace) {
    auto os = open_out(path);
    os << "tau,percentile,val_loss,ber,flops,accepted\n";
    for (const prune::TraceRow& r : trace)
        os << fmt_double(r.tau) << ',' << fmt_double(r.percentile) << ','
           << fmt_double(r.val_loss) << ',' << fmt_double(r.ber) << ',' << r.flops << ','
           << (r.accepted ? 1 : 0) << '\n';
}

void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& losses) {
    auto os = open_out(path);
    os << "epoch,train_loss\n";
    for (std::size_t e = 0; e < losses.size(); ++e)
        os << e << ',' << fmt_double(losses[e]) << '\n';
}

nlohmann::json search_result_to_json(const prune::SearchResult& result) {
    nlohmann::json j;
    j["no_improvement"] = result.no_improvement;
    j["val_loss"] = result.val_loss;
    j["ber"] = result.ber;
    j["ber_target"] = result.ber_target;
    j["flops"] = result.flops;
    j["baseline_flops"] = result.baseline_flops;
    j["reduction_pct"] = result.reduction_pct;
    j["masks"]["input"] = result.best_masks.input;
    j["masks"]["hidden"] = result.best_masks.hidden;
    j["input_active"] = result.best_masks.input_active();
    j["hidden_active"] = result.best_masks.hidden_active();
    j["layer_sizes"] = result.best_model.layer_sizes;
    nlohmann::json rows = nlohmann::json::array();
    for (const prune::TraceRow& r : result.trace) {
        rows.push_back({{"tau", r.tau},
                        {"percentile", r.percentile},
                        {"val_loss", r.val_loss},
                        {"ber", r.ber},
                        {"flops", r.flops},
                        {"accepted", r.accepted},
                        {"status", r.status}});
    }
    j["trace"] = rows;
    return j;
}

void write_search_result(const std::filesystem::path& path,
                         const prune::SearchResult& result) {
    auto os = open_out(path);
    os << search_result_to_json(result).dump(2) << '\n';
}

} // namespace chestkit::pipeline
