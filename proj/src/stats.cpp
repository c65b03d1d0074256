#include "mimo/stats.hpp"

#include <algorithm>
#include <cmath>

#include "mimo/ensemble.hpp"
#include "mimo/tridiag.hpp"

namespace mimo::stats {

namespace {

struct TrialStats {
    std::vector<cplx> w;  // dense K x K copy for the moment accumulations
    double p_sum = 0.0;   // per-matrix attenuation mean
    double step2 = 0.0;
    double ratio_dia = 0.0;
    double ratio_tri = 0.0;
    double theta_dia = 0.0;
    double theta_tri = 0.0;
    double theta_tma = 0.0;
    double offband_ratio = 0.0;
};

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EnsembleStats compute_ensemble_stats(std::size_t n, std::size_t k, double zeta, double eta2,
                                     std::size_t trials, std::uint64_t master_seed,
                                     int workers) {
    EnsembleStats es;
    es.n = n;
    es.k = k;
    es.zeta = zeta;
    es.eta2 = eta2;
    es.trials = trials;

    const CorrelationSpec corr{n, zeta, PhaseMode::Zero, 0};
    const PathLossSpec loss = PathLossSpec::uniform(k);
    const HermitianMatrix r = channel::build_correlation_matrix(corr);
    {
        double s = 0.0;
        for (const cplx& x : r.data()) s += std::norm(x);
        es.r_fro2 = s;
    }
    HermitianMatrix r_sqrt;
    const HermitianMatrix* r_sqrt_ptr = nullptr;
    if (zeta > 0.0) {
        r_sqrt = linalg::hermitian_sqrt(r);
        r_sqrt_ptr = &r_sqrt;
    }

    const auto outcomes = ensemble::map_trials<TrialStats>(
        trials, 0, workers, [&](std::uint64_t t) {
            Rng rng(master_seed, 0x73746174ull /* "stat" */, t);
            const ChannelRealization real =
                channel::assemble_realization(corr, loss, eta2, rng, r_sqrt_ptr);

            TrialStats ts;
            ts.w.assign(real.w.data().begin(), real.w.data().end());

            const TridiagonalHermitian tri = tridiag::extract_tridiagonal(real.w);
            ts.p_sum = tridiag::p_attenuation_statistic({&tri, 1});

            const HermitianMatrix exact = tridiag::exact_inverse(tri);
            const BandedInverse band = tridiag::banded_inverse_alg1(tri);
            double l1_exact = 0.0, l1_band = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                l1_exact += std::abs(exact(i, i));
                l1_band += std::abs(band.phi_diag[i]);
            }
            ts.step2 = std::abs(l1_band - l1_exact) / l1_exact;

            double off_sum = 0.0, diag_sum = 0.0;
            std::size_t off_count = 0;
            for (std::size_t i = 0; i < k; ++i) {
                diag_sum += std::abs(exact(i, i));
                for (std::size_t j = 0; j < k; ++j) {
                    if (i == j || (i > j ? i - j : j - i) == 1) continue;
                    off_sum += std::abs(exact(i, j));
                    ++off_count;
                }
            }
            ts.offband_ratio = off_count > 0
                                   ? (off_sum / static_cast<double>(off_count)) /
                                         (diag_sum / static_cast<double>(k))
                                   : 0.0;

            const DominanceReport rep = analysis::dominance_report(real.w);
            ts.ratio_dia = rep.ratio_dia;
            ts.ratio_tri = rep.ratio_tri;

            ts.theta_dia = analysis::theta_norm(real.w, InitializerKind::Diagonal);
            ts.theta_tri = analysis::theta_norm(real.w, InitializerKind::TridiagonalExact);
            ts.theta_tma = analysis::theta_norm(real.w, InitializerKind::TridiagonalBanded);
            return ts;
        });

    // serial reduction in trial order
    std::vector<cplx> mean_w(k * k, 0.0);
    std::vector<double> theta_dia, theta_tri, theta_tma;
    theta_dia.reserve(trials);
    double p_acc = 0.0, step2_acc = 0.0, rd_acc = 0.0, rt_acc = 0.0, off_acc = 0.0;
    double tri_smaller = 0.0;
    std::size_t good = 0;
    for (const auto& oc : outcomes) {
        if (!oc.value.has_value()) throw Error("ensemble trial failed: " + oc.error);
        const TrialStats& ts = *oc.value;
        for (std::size_t i = 0; i < k * k; ++i) mean_w[i] += ts.w[i];
        p_acc += ts.p_sum;
        step2_acc += ts.step2;
        rd_acc += ts.ratio_dia;
        rt_acc += ts.ratio_tri;
        off_acc += ts.offband_ratio;
        theta_dia.push_back(ts.theta_dia);
        theta_tri.push_back(ts.theta_tri);
        theta_tma.push_back(ts.theta_tma);
        tri_smaller += ts.theta_tri < ts.theta_dia ? 1.0 : 0.0;
        ++good;
    }
    const double t = static_cast<double>(good);
    for (auto& x : mean_w) x /= t;

    // ||mean(W)/N - Sigma||_F / ||Sigma||_F with Sigma = I (uniform loss)
    double num = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const cplx m = mean_w[i * k + j] / static_cast<double>(n);
            const cplx target = (i == j) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            num += std::norm(m - target);
        }
    es.mean_rel_err = std::sqrt(num) / std::sqrt(static_cast<double>(k));

    // off-diagonal sample variance, aggregated over entries
    std::vector<double> var(k * k, 0.0);
    for (const auto& oc : outcomes) {
        const TrialStats& ts = *oc.value;
        for (std::size_t i = 0; i < k * k; ++i) var[i] += std::norm(ts.w[i] - mean_w[i]);
    }
    double var_sum = 0.0;
    std::size_t var_count = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            var_sum += var[i * k + j] / (t - 1.0);
            ++var_count;
        }
    es.var_aggregate = var_sum / static_cast<double>(var_count);
    es.var_rel_err = std::abs(es.var_aggregate - es.r_fro2) / es.r_fro2;

    es.p_attenuation = p_acc / t;
    es.step2_error = step2_acc / t;
    es.ratio_dia_mean = rd_acc / t;
    es.ratio_tri_mean = rt_acc / t;
    es.offband_mean_over_diag_mean = off_acc / t;
    es.theta_dia_median = median_of(theta_dia);
    es.theta_tri_median = median_of(theta_tri);
    es.theta_tma_median = median_of(theta_tma);
    es.theta_tri_smaller_frac = tri_smaller / t;
    es.trials = good;
    return es;
}

}  // namespace mimo::stats
