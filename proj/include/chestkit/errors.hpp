// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_ERRORS_HPP
#define CHESTKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chestkit {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration values (frame layout, channel profile, layer sizes, ...).
struct ConfigError : Error {
    using Error::Error;
};

// Bit vector length not divisible by the modulation's bits-per-symbol.
struct InvalidLength : Error {
    using Error::Error;
};

// Dimension mismatch in the time-domain link simulation.
struct SimError : Error {
    using Error::Error;
};

// NaN loss during gradient descent.
struct TrainingDiverged : Error {
    using Error::Error;
};

// Input mask with no surviving subcarrier.
struct MaskEmpty : Error {
    using Error::Error;
};

// Architecture mask that would remove every neuron of a hidden layer.
struct LayerCollapse : Error {
    using Error::Error;
};

// Activation trace inconsistent with the model it is paired with.
struct TraceError : Error {
    using Error::Error;
};

// Unreadable, truncated or wrong-version checkpoint file.
struct CorruptCheckpoint : Error {
    using Error::Error;
};

} // namespace chestkit

#endif
