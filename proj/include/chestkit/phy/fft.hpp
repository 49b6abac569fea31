// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#ifndef CHESTKIT_PHY_FFT_HPP
#define CHESTKIT_PHY_FFT_HPP

#include "chestkit/types.hpp"

namespace chestkit::phy {

// In-place radix-2 DFT with unitary 1/sqrt(N) scaling in both directions,
// so dft(dft(x, fwd), inv) == x and power is preserved per sample.
// N must be a power of two.
void dft_unitary(cvec& x, bool inverse);

} // namespace chestkit::phy

#endif
