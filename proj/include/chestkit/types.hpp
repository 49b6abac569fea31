// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_TYPES_HPP
#define CHESTKIT_TYPES_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace chestkit {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using cmat = std::vector<cvec>; // row-major: mat[row][col]

using Bits = std::vector<std::uint8_t>;

// Derives an independent stream seed from a base seed (splitmix64 step).
// All randomness in the toolkit flows through this so that every artifact
// is a pure function of the named seeds in the experiment config.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace chestkit

#endif
