// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_FNN_CHECKPOINT_HPP
#define CHESTKIT_FNN_CHECKPOINT_HPP

#include <filesystem>
#include <string>

#include "chestkit/fnn/model.hpp"

#include "json.hpp"

namespace chestkit::fnn {

struct Checkpoint {
    ModelParams model;
    nlohmann::json meta;
};

// Binary format, little-endian; byte layout documented in
// docs/checkpoint_format.md. Parameters round-trip at full precision.
void save_checkpoint(const std::filesystem::path& path, const ModelParams& model,
                     const nlohmann::json& meta);

// Throws CorruptCheckpoint on bad magic, unknown version or truncation.
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace chestkit::fnn

#endif
