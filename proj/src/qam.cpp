#include "mimo/qam.hpp"

#include <cmath>

namespace mimo::qam {
namespace {

struct AxisMap {
    int bits;       // bits per axis
    int levels;     // 2^bits
    double scale;   // level spacing, sqrt(3 / (2 (M - 1)))
};

AxisMap axis_map(Modulation m) {
    const int mb = bits_per_symbol(m) / 2;
    const int levels = 1 << mb;
    const double scale = std::sqrt(3.0 / (2.0 * (order(m) - 1)));
    return {mb, levels, scale};
}

unsigned gray_to_bin(unsigned g, int bits) {
    unsigned b = g;
    for (int shift = 1; shift < bits; shift <<= 1) b ^= b >> shift;
    return b;
}

unsigned bin_to_gray(unsigned b) { return b ^ (b >> 1); }

double axis_modulate(std::span<const std::uint8_t> bits, const AxisMap& ax) {
    unsigned g = 0;
    for (int t = 0; t < ax.bits; ++t) g = (g << 1) | (bits[static_cast<std::size_t>(t)] & 1u);
    const unsigned k = gray_to_bin(g, ax.bits);
    return (ax.levels - 1 - 2.0 * static_cast<double>(k)) * ax.scale;
}

void axis_demodulate(double x, const AxisMap& ax, std::uint8_t* out) {
    const double raw = (ax.levels - 1 - x / ax.scale) / 2.0;
    long k = std::lround(raw);
    if (k < 0) k = 0;
    if (k >= ax.levels) k = ax.levels - 1;
    const unsigned g = bin_to_gray(static_cast<unsigned>(k));
    for (int t = 0; t < ax.bits; ++t)
        out[t] = static_cast<std::uint8_t>((g >> (ax.bits - 1 - t)) & 1u);
}

}  // namespace

std::vector<cplx> modulate(std::span<const std::uint8_t> bits, Modulation m) {
    const AxisMap ax = axis_map(m);
    const std::size_t bps = static_cast<std::size_t>(2 * ax.bits);
    if (bits.size() % bps != 0) throw BitCountMismatch();
    std::vector<cplx> out(bits.size() / bps);
    for (std::size_t s = 0; s < out.size(); ++s) {
        const std::uint8_t* word = bits.data() + s * bps;
        const double re = axis_modulate({word, static_cast<std::size_t>(ax.bits)}, ax);
        const double im = axis_modulate({word + ax.bits, static_cast<std::size_t>(ax.bits)}, ax);
        out[s] = {re, im};
    }
    return out;
}

std::vector<std::uint8_t> demodulate_hard(std::span<const cplx> symbols, Modulation m) {
    const AxisMap ax = axis_map(m);
    const std::size_t bps = static_cast<std::size_t>(2 * ax.bits);
    std::vector<std::uint8_t> bits(symbols.size() * bps);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        std::uint8_t* word = bits.data() + s * bps;
        axis_demodulate(symbols[s].real(), ax, word);
        axis_demodulate(symbols[s].imag(), ax, word + ax.bits);
    }
    return bits;
}

std::vector<std::uint8_t> random_bits(std::size_t count, Rng& rng) {
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

}  // namespace mimo::qam
