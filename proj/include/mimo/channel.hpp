#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mimo/linalg.hpp"
#include "mimo/rng.hpp"

namespace mimo {

enum class PhaseMode { Zero, FixedRandom };

// Receive-side correlation: r_lm = (zeta e^{j w_lm})^{|l-m|} for l <= m,
// mirrored by conjugation. PhaseMode::Zero sets every w_lm to 0;
// FixedRandom draws w_lm once from the given seed.
struct CorrelationSpec {
    std::size_t n = 1;
    double zeta = 0.0;
    PhaseMode phase_mode = PhaseMode::Zero;
    std::uint64_t phase_seed = 0;
};

struct PathLossSpec {
    std::vector<double> sigma;  // per-user large-scale gain, all > 0

    static PathLossSpec uniform(std::size_t k) { return {std::vector<double>(k, 1.0)}; }
};

// One channel draw together with everything detection needs.
struct ChannelRealization {
    Matrix h;                 // N x K fast fading, iid CN(0,1)
    HermitianMatrix r_sqrt;   // N x N
    std::vector<double> sigma_sqrt;
    double eta2 = 0.0;
    Matrix gamma;             // R^{1/2} H Sigma^{1/2}
    HermitianMatrix w;        // gamma^H gamma + eta2 I

    std::size_t n() const { return gamma.rows(); }
    std::size_t k() const { return gamma.cols(); }
};

namespace channel {

HermitianMatrix build_correlation_matrix(const CorrelationSpec& spec);

Matrix sample_fast_fading(std::size_t n, std::size_t k, Rng& rng);

// Assembles one realization. r_sqrt can be passed in to amortize the matrix
// square root across an ensemble that shares the same CorrelationSpec.
ChannelRealization assemble_realization(const CorrelationSpec& corr, const PathLossSpec& loss,
                                        double eta2, Rng& rng,
                                        const HermitianMatrix* r_sqrt_cached = nullptr);

std::vector<cplx> received_signal(const ChannelRealization& real, std::span<const cplx> s,
                                  Rng& rng);

std::vector<cplx> matched_filter(const ChannelRealization& real, std::span<const cplx> y);

}  // namespace channel
}  // namespace mimo
