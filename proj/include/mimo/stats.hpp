#pragma once

#include <cstdint>

#include "mimo/analysis.hpp"
#include "mimo/channel.hpp"

namespace mimo {

// One-pass statistics over an ensemble of correlated-channel filtering
// matrices: moment checks, band-dominance figures, attenuation and
// elimination-error statistics of the tridiagonal machinery, and the
// series-initializer contraction norms.
struct EnsembleStats {
    std::size_t n = 0, k = 0;
    double zeta = 0.0;
    double eta2 = 0.0;
    std::size_t trials = 0;

    double r_fro2 = 0.0;           // ||R(zeta)||_F^2
    double mean_rel_err = 0.0;     // ||mean(W)/N - Sigma||_F / ||Sigma||_F
    double var_rel_err = 0.0;      // off-diagonal sample variance vs ||R||_F^2 sigma_i sigma_j
    double var_aggregate = 0.0;    // mean over i != j of sample var / (sigma_i sigma_j)

    double p_attenuation = 0.0;    // mean |a_i z_{i-1}/z_i| over indices and trials
    double step2_error = 0.0;      // mean | ||phi~||_1 - ||phi||_1 | / ||phi||_1 (dimensionless)

    double ratio_dia_mean = 0.0;   // band dominance, ensemble means
    double ratio_tri_mean = 0.0;
    double theta_dia_median = 0.0;
    double theta_tri_median = 0.0;     // exact tridiagonal initializer
    double theta_tma_median = 0.0;     // banded initializer
    double theta_tri_smaller_frac = 0.0;  // fraction of draws with ||Theta_tri|| < ||Theta_dia||

    double offband_mean_over_diag_mean = 0.0;  // inverse mass outside the tridiagonal band
};

namespace stats {

EnsembleStats compute_ensemble_stats(std::size_t n, std::size_t k, double zeta, double eta2,
                                     std::size_t trials, std::uint64_t master_seed,
                                     int workers = 0);

}  // namespace stats
}  // namespace mimo
