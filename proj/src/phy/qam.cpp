// Copyright 2026 chestkit authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "chestkit/phy/qam.hpp"

#include <array>
#include <cmath>

#include "chestkit/errors.hpp"

namespace chestkit::phy {

namespace {

// Reflected 3-bit Gray sequence over the 8 amplitude levels of 64QAM.
// Adjacent levels differ in exactly one bit.
constexpr std::array<std::uint8_t, 8> kGray3 = {0b000, 0b001, 0b011, 0b010,
                                                0b110, 0b111, 0b101, 0b100};

constexpr double kQpskScale = 0.70710678118654752440;  // 1/sqrt(2)
const double kQam64Scale = 1.0 / std::sqrt(42.0);      // unit mean energy over 64 points

double gray3_to_level(std::uint8_t g) {
    for (int i = 0; i < 8; ++i) {
        if (kGray3[i] == g) return -7.0 + 2.0 * i;
    }
    return 0.0; // unreachable for 3-bit input
}

std::uint8_t level_index_to_gray3(int idx) { return kGray3[idx]; }

// Quantize to the nearest of {-7,-5,...,+7} and return its index 0..7.
int nearest_level_index(double v) {
    int idx = static_cast<int>(std::lround((v + 7.0) / 2.0));
    if (idx < 0) idx = 0;
    if (idx > 7) idx = 7;
    return idx;
}

} // namespace

int bits_per_symbol(Modulation mod) {
    return mod == Modulation::QPSK ? 2 : 6;
}

Modulation modulation_from_string(const std::string& name) {
    if (name == "QPSK") return Modulation::QPSK;
    if (name == "64QAM") return Modulation::QAM64;
    throw ConfigError("unknown modulation: " + name);
}

std::string to_string(Modulation mod) {
    return mod == Modulation::QPSK ? "QPSK" : "64QAM";
}

cvec qam_map(std::span<const std::uint8_t> bits, Modulation mod) {
    const int bps = bits_per_symbol(mod);
    if (bits.size() % static_cast<std::size_t>(bps) != 0) {
        throw InvalidLength("bit count " + std::to_string(bits.size()) +
                            " not divisible by " + std::to_string(bps));
    }
    cvec out;
    out.reserve(bits.size() / bps);
    if (mod == Modulation::QPSK) {
        for (std::size_t i = 0; i < bits.size(); i += 2) {
            out.emplace_back((1.0 - 2.0 * bits[i]) * kQpskScale,
                             (1.0 - 2.0 * bits[i + 1]) * kQpskScale);
        }
    } else {
        for (std::size_t i = 0; i < bits.size(); i += 6) {
            std::uint8_t gi = static_cast<std::uint8_t>((bits[i] << 2) | (bits[i + 1] << 1) | bits[i + 2]);
            std::uint8_t gq = static_cast<std::uint8_t>((bits[i + 3] << 2) | (bits[i + 4] << 1) | bits[i + 5]);
            out.emplace_back(gray3_to_level(gi) * kQam64Scale, gray3_to_level(gq) * kQam64Scale);
        }
    }
    return out;
}

Bits qam_demap(std::span<const cplx> symbols, Modulation mod) {
    Bits out;
    out.reserve(symbols.size() * bits_per_symbol(mod));
    if (mod == Modulation::QPSK) {
        for (const cplx& s : symbols) {
            out.push_back(s.real() < 0.0 ? 1 : 0);
            out.push_back(s.imag() < 0.0 ? 1 : 0);
        }
    } else {
        for (const cplx& s : symbols) {
            std::uint8_t gi = level_index_to_gray3(nearest_level_index(s.real() / kQam64Scale));
            std::uint8_t gq = level_index_to_gray3(nearest_level_index(s.imag() / kQam64Scale));
            out.push_back((gi >> 2) & 1);
            out.push_back((gi >> 1) & 1);
            out.push_back(gi & 1);
            out.push_back((gq >> 2) & 1);
            out.push_back((gq >> 1) & 1);
            out.push_back(gq & 1);
        }
    }
    return out;
}

cplx qam_nearest(cplx symbol, Modulation mod) {
    if (mod == Modulation::QPSK) {
        return {symbol.real() < 0.0 ? -kQpskScale : kQpskScale,
                symbol.imag() < 0.0 ? -kQpskScale : kQpskScale};
    }
    double re = -7.0 + 2.0 * nearest_level_index(symbol.real() / kQam64Scale);
    double im = -7.0 + 2.0 * nearest_level_index(symbol.imag() / kQam64Scale);
    return {re * kQam64Scale, im * kQam64Scale};
}

} // namespace chestkit::phy
