#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mimo {

// Deterministic random stream. Each Monte-Carlo trial gets its own stream
// derived from (master_seed, trial_index, tag), so results do not depend on
// how trials are scheduled across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    Rng(std::uint64_t master_seed, std::uint64_t stream_tag, std::uint64_t trial_index) {
        std::seed_seq seq{
            static_cast<std::uint32_t>(master_seed),
            static_cast<std::uint32_t>(master_seed >> 32),
            static_cast<std::uint32_t>(stream_tag),
            static_cast<std::uint32_t>(stream_tag >> 32),
            static_cast<std::uint32_t>(trial_index),
            static_cast<std::uint32_t>(trial_index >> 32)};
        eng_.seed(seq);
    }

    std::uint64_t bits() { return eng_(); }

    int bit() { return static_cast<int>(eng_() >> 63); }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // standard normal, Box-Muller (explicit so the stream layout is fixed)
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, r2;
        do {
            u = uniform();
            r2 = uniform();
        } while (u <= 0.0);
        const double mag = std::sqrt(-2.0 * std::log(u));
        const double ang = 2.0 * M_PI * r2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

    // CN(0,1): independent real/imag parts with variance 1/2 each
    std::complex<double> complex_gaussian() {
        const double s = std::sqrt(0.5);
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mimo
