// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/fnn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "chestkit/errors.hpp"

namespace chestkit::fnn {

namespace {

constexpr char kMagic[8] = {'C', 'K', 'F', 'N', 'N', 'C', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_doubles(std::ostream& os, const std::vector<double>& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw CorruptCheckpoint("checkpoint: truncated file");
    return v;
}
std::uint64_t read_u64(std::istream& is) {
    std::uint64_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(v)))
        throw CorruptCheckpoint("checkpoint: truncated file");
    return v;
}
void read_doubles(std::istream& is, std::vector<double>& v, std::size_t n) {
    v.resize(n);
    if (!is.read(reinterpret_cast<char*>(v.data()),
                 static_cast<std::streamsize>(n * sizeof(double))))
        throw CorruptCheckpoint("checkpoint: truncated parameter block");
}

} // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelParams& model,
                     const nlohmann::json& meta) {
    model.validate();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("checkpoint: cannot open " + path.string() + " for writing");

    os.write(kMagic, sizeof(kMagic));
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(model.layer_sizes.size()));
    for (int n : model.layer_sizes) write_u32(os, static_cast<std::uint32_t>(n));
    write_u32(os, static_cast<std::uint32_t>(model.activation));
    write_u32(os, model.norm_mean.empty() ? 0u : 1u);
    if (!model.norm_mean.empty()) {
        write_doubles(os, model.norm_mean);
        write_doubles(os, model.norm_std);
    }
    for (int l = 0; l < model.num_weight_layers(); ++l) {
        write_doubles(os, model.weights[l]);
        write_doubles(os, model.biases[l]);
    }
    const std::string meta_text = meta.dump();
    write_u64(os, meta_text.size());
    os.write(meta_text.data(), static_cast<std::streamsize>(meta_text.size()));
    if (!os) throw Error("checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CorruptCheckpoint("checkpoint: cannot open " + path.string());

    char magic[8] = {};
    if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw CorruptCheckpoint("checkpoint: bad magic in " + path.string());
    const std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw CorruptCheckpoint("checkpoint: unsupported version " + std::to_string(version));

    Checkpoint ck;
    const std::uint32_t n_layers = read_u32(is);
    if (n_layers < 2 || n_layers > 1024)
        throw CorruptCheckpoint("checkpoint: implausible layer count");
    ck.model.layer_sizes.resize(n_layers);
    for (auto& n : ck.model.layer_sizes) n = static_cast<int>(read_u32(is));
    ck.model.activation = static_cast<Activation>(read_u32(is));
    const bool has_norm = read_u32(is) != 0;
    if (has_norm) {
        read_doubles(is, ck.model.norm_mean, ck.model.layer_sizes[0]);
        read_doubles(is, ck.model.norm_std, ck.model.layer_sizes[0]);
    }
    for (std::uint32_t l = 0; l + 1 < n_layers; ++l) {
        const std::size_t n_in = ck.model.layer_sizes[l];
        const std::size_t n_out = ck.model.layer_sizes[l + 1];
        ck.model.weights.emplace_back();
        read_doubles(is, ck.model.weights.back(), n_in * n_out);
        ck.model.biases.emplace_back();
        read_doubles(is, ck.model.biases.back(), n_out);
    }
    const std::uint64_t meta_len = read_u64(is);
    std::string meta_text(meta_len, '\0');
    if (!is.read(meta_text.data(), static_cast<std::streamsize>(meta_len)))
        throw CorruptCheckpoint("checkpoint: truncated metadata block");
    try {
        ck.meta = nlohmann::json::parse(meta_text);
    } catch (const nlohmann::json::parse_error&) {
        throw CorruptCheckpoint("checkpoint: metadata is not valid JSON");
    }
    try {
        ck.model.validate();
    } catch (const ConfigError& e) {
        throw CorruptCheckpoint(std::string("checkpoint: inconsistent model: ") + e.what());
    }
    return ck;
}

} // namespace chestkit::fnn
