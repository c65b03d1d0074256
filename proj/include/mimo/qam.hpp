#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mimo/linalg.hpp"
#include "mimo/rng.hpp"

namespace mimo {

enum class Modulation { Qpsk, Qam16, Qam64 };

namespace qam {

inline int order(Modulation m) {
    switch (m) {
        case Modulation::Qpsk: return 4;
        case Modulation::Qam16: return 16;
        case Modulation::Qam64: return 64;
    }
    return 0;
}

inline int bits_per_symbol(Modulation m) {
    switch (m) {
        case Modulation::Qpsk: return 2;
        case Modulation::Qam16: return 4;
        case Modulation::Qam64: return 6;
    }
    return 0;
}

// Gray-mapped square QAM normalized to unit average symbol energy. Per axis,
// bits map MSB-first through a binary-reflected Gray code onto amplitudes
// (M_axis-1-2k)*a, so the all-zero word lands on the most positive level
// (QPSK 00 -> (1+1j)/sqrt(2)).
std::vector<cplx> modulate(std::span<const std::uint8_t> bits, Modulation m);

// Hard minimum-distance decisions (per-axis slicing).
std::vector<std::uint8_t> demodulate_hard(std::span<const cplx> symbols, Modulation m);

std::vector<std::uint8_t> random_bits(std::size_t count, Rng& rng);

}  // namespace qam
}  // namespace mimo
