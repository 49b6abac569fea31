// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_FNN_MODEL_HPP
#define CHESTKIT_FNN_MODEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "chestkit/types.hpp"

namespace chestkit::fnn {

enum class Activation : std::uint8_t { ReLU = 0 };

using Mask = std::vector<std::uint8_t>; // 0/1 per unit

// Dense feed-forward network. weights[l] maps layer l (size layer_sizes[l])
// to layer l+1, stored row-major as layer_sizes[l+1] x layer_sizes[l].
// Hidden layers apply the activation; the output layer is linear.
//
// norm_mean/norm_std hold the per-feature standardization computed on the
// training split (empty means identity). The input pipeline is
//   a0 = mask * (x - mean) / std
// so that a masked feature contributes exactly nothing, which is what makes
// mask-based and physically compacted evaluation interchangeable.
struct ModelParams {
    std::vector<int> layer_sizes;              // n_0 .. n_L
    std::vector<std::vector<double>> weights;  // L blocks
    std::vector<std::vector<double>> biases;   // L blocks
    Activation activation = Activation::ReLU;
    std::vector<double> norm_mean;
    std::vector<double> norm_std;

    int num_weight_layers() const { return static_cast<int>(weights.size()); }
    int input_size() const { return layer_sizes.front(); }
    int output_size() const { return layer_sizes.back(); }
    std::size_t param_count() const;
    void validate() const; // shape chaining, throws ConfigError
};

// Activations a^(0)..a^(L) for one input (a^(0) is the standardized,
// masked input actually seen by the first weight layer).
struct ActivationTrace {
    std::vector<std::vector<double>> a;
};

// He-style fan-in scaled weights, zero biases, deterministic per seed.
ModelParams init_model(const std::vector<int>& layer_sizes, std::uint64_t seed);

std::vector<double> forward(const ModelParams& model, std::span<const double> input,
                            ActivationTrace* trace = nullptr);

// Eq.-style Hadamard masking: the standardized input is multiplied by
// m_in and each hidden layer's post-activation by its sub-mask. The output
// layer is never masked.
std::vector<double> masked_forward(const ModelParams& model, std::span<const double> input,
                                   const Mask& m_in, const std::vector<Mask>& m_hidden,
                                   ActivationTrace* trace = nullptr);

// Physically removes masked units: drops rows/columns of the weight
// matrices, bias entries and normalization entries of dead units. The
// result evaluated on the surviving input features equals masked_forward
// of the original model on the full input.
ModelParams compact_model(const ModelParams& model, const Mask& m_in,
                          const std::vector<Mask>& m_hidden);

// Complex <-> real vector layout [Re(0..K-1), Im(0..K-1)].
std::vector<double> vectorize(std::span<const cplx> h);
cvec devectorize(std::span<const double> v);

// Restrict a full-length input vector to the active entries of m_in.
std::vector<double> apply_input_mask(std::span<const double> input, const Mask& m_in);

} // namespace chestkit::fnn

#endif
