#include "mimo/channel.hpp"

#include <cmath>

namespace mimo::channel {

HermitianMatrix build_correlation_matrix(const CorrelationSpec& spec) {
    const std::size_t n = spec.n;
    HermitianMatrix r(n);
    Rng phase_rng(spec.phase_seed, 0x70686173u /* "phas" */, 0);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t l = 0; l <= m; ++l) {
            const auto d = static_cast<double>(m - l);
            if (l == m) {
                r.set_lower(m, l, 1.0);
                continue;
            }
            double omega = 0.0;
            if (spec.phase_mode == PhaseMode::FixedRandom) omega = 2.0 * M_PI * phase_rng.uniform();
            const double mag = std::pow(spec.zeta, d);
            const cplx rlm = mag * cplx(std::cos(omega * d), std::sin(omega * d));
            // r_lm defined for l <= m; storage is lower-authoritative, so the
            // (m,l) slot gets the conjugate
            r.set_lower(m, l, std::conj(rlm));
        }
    }
    return r;
}

Matrix sample_fast_fading(std::size_t n, std::size_t k, Rng& rng) {
    Matrix h(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) h(i, j) = rng.complex_gaussian();
    return h;
}

ChannelRealization assemble_realization(const CorrelationSpec& corr, const PathLossSpec& loss,
                                        double eta2, Rng& rng,
                                        const HermitianMatrix* r_sqrt_cached) {
    const std::size_t n = corr.n;
    const std::size_t k = loss.sigma.size();
    if (k == 0) throw EmptyMatrix();
    if (!(eta2 >= 0.0)) throw ConfigInvalid("eta2 must be nonnegative");

    ChannelRealization real;
    real.eta2 = eta2;
    real.h = sample_fast_fading(n, k, rng);
    if (r_sqrt_cached != nullptr) {
        real.r_sqrt = *r_sqrt_cached;
    } else {
        real.r_sqrt = linalg::hermitian_sqrt(build_correlation_matrix(corr));
    }

    real.sigma_sqrt.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (!(loss.sigma[j] > 0.0)) throw ConfigInvalid("path-loss sigma must be positive");
        real.sigma_sqrt[j] = std::sqrt(loss.sigma[j]);
    }

    // gamma = R^{1/2} H Sigma^{1/2}; the identity R is common enough to skip
    const bool r_is_identity = (corr.zeta == 0.0);
    real.gamma = Matrix(n, k);
    if (r_is_identity) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) real.gamma(i, j) = real.h(i, j) * real.sigma_sqrt[j];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                cplx s = 0.0;
                for (std::size_t t = 0; t < n; ++t) s += real.r_sqrt(i, t) * real.h(t, j);
                real.gamma(i, j) = s * real.sigma_sqrt[j];
            }
        }
    }

    HermitianMatrix w = linalg::hermitian_product(real.gamma);
    for (std::size_t j = 0; j < k; ++j) w.set_lower(j, j, w(j, j).real() + eta2);
    real.w = std::move(w);
    return real;
}

std::vector<cplx> received_signal(const ChannelRealization& real, std::span<const cplx> s,
                                  Rng& rng) {
    if (s.size() != real.k()) throw DimensionMismatch();
    std::vector<cplx> y = linalg::multiply(real.gamma, s);
    const double sd = std::sqrt(real.eta2);
    for (auto& yi : y) yi += sd * rng.complex_gaussian();
    return y;
}

std::vector<cplx> matched_filter(const ChannelRealization& real, std::span<const cplx> y) {
    if (y.size() != real.n()) throw DimensionMismatch();
    std::vector<cplx> out(real.k());
    for (std::size_t j = 0; j < real.k(); ++j) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < real.n(); ++i) s += std::conj(real.gamma(i, j)) * y[i];
        out[j] = s;
    }
    return out;
}

}  // namespace mimo::channel
