// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PHY_QAM_HPP
#define CHESTKIT_PHY_QAM_HPP

#include <span>
#include <string>

#include "chestkit/types.hpp"

namespace chestkit::phy {

enum class Modulation { QPSK, QAM64 };

int bits_per_symbol(Modulation mod);

Modulation modulation_from_string(const std::string& name);
std::string to_string(Modulation mod);

// Gray-coded square-QAM mapping with unit average constellation energy.
// QPSK: bits (b0,b1) -> ((1-2*b0) + j(1-2*b1))/sqrt(2), so 00 -> (+1+j)/sqrt(2).
// 64QAM: bits (b0..b2 | b3..b5) Gray-map each axis onto {-7,...,+7}/sqrt(42).
cvec qam_map(std::span<const std::uint8_t> bits, Modulation mod);

// Hard minimum-distance decision back to bits. Always decides.
Bits qam_demap(std::span<const cplx> symbols, Modulation mod);

// Nearest constellation point (used for decision feedback).
cplx qam_nearest(cplx symbol, Modulation mod);

} // namespace chestkit::phy

#endif
