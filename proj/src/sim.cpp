#include "mimo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"
#include "mimo/analysis.hpp"
#include "mimo/ensemble.hpp"

namespace mimo::sim {

namespace {

// Per-trial bit-error counts for every detector in the plan.
struct TrialCounts {
    std::vector<std::uint32_t> errors;
    std::vector<std::uint8_t> diverged;
    std::uint32_t bits = 0;
};

struct PointAccum {
    std::vector<std::uint64_t> errors;
    std::vector<std::uint64_t> diverged;
    std::uint64_t bits = 0;
    std::uint64_t trials = 0;
    std::uint64_t failed_trials = 0;
};

// Execution plan: detectors grouped by initializer kind so one NseState per
// kind is advanced incrementally through ascending iteration counts.
struct Plan {
    struct SeriesEntry {
        int l;
        std::size_t spec_index;
    };
    bool need_exact = false;
    std::size_t exact_index = 0;
    std::map<InitializerKind, std::vector<SeriesEntry>> series;
    std::vector<std::pair<DetectorSpec, std::size_t>> improved;

    explicit Plan(std::span<const DetectorSpec> specs) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const DetectorSpec& d = specs[i];
            switch (d.method) {
                case DetectorSpec::Method::ExactMmse:
                    need_exact = true;
                    exact_index = i;
                    break;
                case DetectorSpec::Method::Dns:
                    series[InitializerKind::Diagonal].push_back({d.l, i});
                    break;
                case DetectorSpec::Method::Tns:
                    series[InitializerKind::TridiagonalExact].push_back({d.l, i});
                    break;
                case DetectorSpec::Method::Tma:
                    series[InitializerKind::TridiagonalBanded].push_back({d.l, i});
                    break;
                case DetectorSpec::Method::ImprovedNse:
                    improved.emplace_back(d, i);
                    break;
            }
        }
        for (auto& [kind, list] : series)
            std::sort(list.begin(), list.end(),
                      [](const SeriesEntry& a, const SeriesEntry& b) { return a.l < b.l; });
    }
};

struct PointContext {
    const SimConfig& cfg;
    CorrelationSpec corr;
    PathLossSpec loss;
    const HermitianMatrix* r_sqrt;  // cached across trials; null when zeta == 0
    std::span<const DetectorSpec> specs;
    const Plan& plan;
    double eta2;
    std::uint64_t stream_tag;
};

std::uint32_t count_bit_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::uint32_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
    return e;
}

TrialCounts run_trial(const PointContext& ctx, std::uint64_t trial_index) {
    const SimConfig& cfg = ctx.cfg;
    const std::size_t nspec = ctx.specs.size();
    const int bps = qam::bits_per_symbol(cfg.modulation);
    const std::size_t frame_bits = cfg.k * static_cast<std::size_t>(bps);

    TrialCounts out;
    out.errors.assign(nspec, 0);
    out.diverged.assign(nspec, 0);

    Rng rng(cfg.master_seed, ctx.stream_tag, trial_index);
    const ChannelRealization real =
        channel::assemble_realization(ctx.corr, ctx.loss, ctx.eta2, rng, ctx.r_sqrt);

    // draw all frames first; every detector sees the same received signals
    const std::size_t frames = cfg.frames_per_realization;
    std::vector<std::vector<std::uint8_t>> bits(frames);
    std::vector<std::vector<cplx>> y_hat(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        bits[f] = qam::random_bits(frame_bits, rng);
        const std::vector<cplx> s = qam::modulate(bits[f], cfg.modulation);
        const std::vector<cplx> y = channel::received_signal(real, s, rng);
        y_hat[f] = channel::matched_filter(real, y);
    }
    out.bits = static_cast<std::uint32_t>(frame_bits * frames);

    const auto tally = [&](std::size_t spec_index, const Matrix& w_inv) {
        for (std::size_t f = 0; f < frames; ++f) {
            const std::vector<cplx> s_hat = detect::estimate_symbols(w_inv, y_hat[f]);
            const std::vector<std::uint8_t> hat = qam::demodulate_hard(s_hat, cfg.modulation);
            out.errors[spec_index] += count_bit_errors(bits[f], hat);
        }
    };

    if (ctx.plan.need_exact) {
        const Matrix l = linalg::cholesky_factor(real.w);
        for (std::size_t f = 0; f < frames; ++f) {
            const std::vector<cplx> s_hat = linalg::cholesky_solve(l, y_hat[f]);
            const std::vector<std::uint8_t> hat = qam::demodulate_hard(s_hat, cfg.modulation);
            out.errors[ctx.plan.exact_index] += count_bit_errors(bits[f], hat);
        }
    }

    for (const auto& [kind, entries] : ctx.plan.series) {
        NseState st = detect::build_initializer(real.w, kind);
        const std::uint8_t div = st.diverged() ? 1 : 0;
        for (const Plan::SeriesEntry& e : entries) {
            const Matrix& w_inv = detect::nse_iterate(st, e.l);
            tally(e.spec_index, w_inv);
            out.diverged[e.spec_index] = div;
        }
    }

    for (const auto& [spec, idx] : ctx.plan.improved) {
        NseState st = detect::build_initializer(real.w, spec.base);
        const Matrix w_inv = detect::improved_nse(st.x_inv, st.theta, spec.l);
        tally(idx, w_inv);
        out.diverged[idx] = st.diverged() ? 1 : 0;
    }
    return out;
}

// Chunked adaptive loop: the chunk boundaries (not thread scheduling) decide
// when to stop, so the trial count is identical for every worker count.
PointAccum simulate_point(const PointContext& ctx) {
    const SimConfig& cfg = ctx.cfg;
    const std::size_t nspec = ctx.specs.size();
    PointAccum acc;
    acc.errors.assign(nspec, 0);
    acc.diverged.assign(nspec, 0);

    const std::size_t chunk = 256;
    while (true) {
        const auto outcomes = ensemble::map_trials<TrialCounts>(
            chunk, acc.trials + acc.failed_trials, cfg.workers,
            [&ctx](std::uint64_t t) { return run_trial(ctx, t); });
        for (const auto& oc : outcomes) {
            if (!oc.value.has_value()) {
                ++acc.failed_trials;  // numeric breakdowns count against no detector
                continue;
            }
            const TrialCounts& tc = *oc.value;
            for (std::size_t i = 0; i < nspec; ++i) {
                acc.errors[i] += tc.errors[i];
                acc.diverged[i] += tc.diverged[i];
            }
            acc.bits += tc.bits;
            ++acc.trials;
        }
        const std::uint64_t min_err =
            *std::min_element(acc.errors.begin(), acc.errors.end());
        const bool enough = acc.trials >= cfg.trials && min_err >= cfg.min_bit_errors;
        if (enough || acc.bits >= cfg.max_bits_per_point) break;
    }
    return acc;
}

std::vector<BerCurve> sweep_with_specs(const SimConfig& cfg, std::span<const DetectorSpec> specs,
                                       std::span<const double> snr_points) {
    const Plan plan(specs);
    const CorrelationSpec corr{cfg.n, cfg.zeta, cfg.phase_mode, cfg.phase_seed};
    const PathLossSpec loss = cfg.path_loss();

    HermitianMatrix r_sqrt;
    const HermitianMatrix* r_sqrt_ptr = nullptr;
    if (cfg.zeta > 0.0) {
        r_sqrt = linalg::hermitian_sqrt(channel::build_correlation_matrix(corr));
        r_sqrt_ptr = &r_sqrt;
    }

    std::vector<BerCurve> curves(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) curves[i].method = specs[i].label();

    for (std::size_t pt = 0; pt < snr_points.size(); ++pt) {
        const double snr = snr_points[pt];
        PointContext ctx{cfg,       corr, loss, r_sqrt_ptr, specs, plan,
                         std::pow(10.0, -snr / 10.0),
                         // stream tag mixes the point so every point draws
                         // independent realizations
                         0x706f696e74ull ^ (static_cast<std::uint64_t>(pt) << 20)};
        const PointAccum acc = simulate_point(ctx);
        for (std::size_t i = 0; i < specs.size(); ++i) {
            BerCurve& c = curves[i];
            c.snr_points.push_back(snr);
            c.bit_errors.push_back(acc.errors[i]);
            c.bits_simulated.push_back(acc.bits);
            c.ber.push_back(acc.bits > 0 ? static_cast<double>(acc.errors[i]) /
                                               static_cast<double>(acc.bits)
                                         : 0.0);
            c.diverged_fraction.push_back(
                acc.trials > 0 ? static_cast<double>(acc.diverged[i]) /
                                     static_cast<double>(acc.trials)
                               : 0.0);
            c.unreliable.push_back(acc.errors[i] < cfg.min_bit_errors ? 1 : 0);
        }
    }
    return curves;
}

}  // namespace

std::vector<BerCurve> run_ber_sweep(const SimConfig& cfg) {
    cfg.validate();
    std::vector<double> snr(cfg.sweep_size());
    for (std::size_t i = 0; i < snr.size(); ++i) snr[i] = cfg.snr_db_at(i);
    return sweep_with_specs(cfg, cfg.detectors, snr);
}

double interpolate_crossing(std::span<const double> snr_db, std::span<const double> ber,
                            double target) {
    constexpr double kFloor = 1e-12;
    if (ber.empty()) return std::numeric_limits<double>::infinity();
    if (ber[0] < target) return -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < ber.size(); ++i) {
        if (ber[i] >= target && ber[i + 1] < target) {
            const double l0 = std::log10(std::max(ber[i], kFloor));
            const double l1 = std::log10(std::max(ber[i + 1], kFloor));
            const double lt = std::log10(target);
            if (l0 == l1) return snr_db[i];
            return snr_db[i] + (lt - l0) * (snr_db[i + 1] - snr_db[i]) / (l1 - l0);
        }
    }
    return std::numeric_limits<double>::infinity();
}

namespace {

DetectorSpec make_family_spec(DetectorSpec::Method family, int l) {
    DetectorSpec d;
    d.method = family;
    d.l = l;
    return d;
}

// Exact-MMSE-only scan to locate the target-BER region. Points are taken in
// ascending order and the scan stops as soon as the crossing is bracketed.
double coarse_exact_crossing(const SimConfig& base, double target_ber) {
    SimConfig cfg = base;
    const std::vector<DetectorSpec> exact_only = {DetectorSpec{}};
    cfg.min_bit_errors = std::max<std::size_t>(40, base.min_bit_errors / 5);
    cfg.trials = 200;
    cfg.max_bits_per_point = std::max<std::uint64_t>(base.max_bits_per_point / 8, 400'000);

    const std::vector<std::pair<double, double>> ranges = {{-12.0, 14.0}, {14.0, 30.0},
                                                           {-30.0, -12.0}};
    for (const auto& [lo, hi] : ranges) {
        double prev_snr = 0.0, prev_ber = -1.0;
        for (double s = lo; s <= hi + 1e-9; s += 2.0) {
            const std::vector<double> one = {s};
            const std::vector<BerCurve> curves = sweep_with_specs(cfg, exact_only, one);
            const double ber = curves[0].ber[0];
            if (ber < target_ber) {
                if (prev_ber >= target_ber) {
                    const std::vector<double> xs = {prev_snr, s};
                    const std::vector<double> bs = {prev_ber, ber};
                    return interpolate_crossing(xs, bs, target_ber);
                }
                break;  // already below target at the range start; try another range
            }
            prev_snr = s;
            prev_ber = ber;
        }
    }
    throw NoConvergence("exact reference never crosses the target BER in the scanned range");
}

}  // namespace

std::vector<IterationSearchResult> find_min_iterations_multi(
    const SimConfig& base, std::span<const DetectorSpec::Method> families, double zeta,
    double beta, const IterSearchOptions& opt) {
    for (const auto f : families)
        if (f == DetectorSpec::Method::ExactMmse)
            throw ConfigInvalid("iteration search needs series detector families");
    SimConfig cfg = base;
    cfg.zeta = zeta;
    const double k_real = static_cast<double>(base.n) / beta;
    cfg.k = static_cast<std::size_t>(std::llround(k_real));
    if (std::abs(k_real - static_cast<double>(cfg.k)) > 1e-9)
        throw ConfigInvalid("beta must divide N");
    cfg.sigma.clear();
    cfg.detectors = {DetectorSpec{}};
    cfg.eta2.clear();
    cfg.snr_db = {0.0};

    double center = coarse_exact_crossing(cfg, opt.target_ber);

    // exact first, then each family's full L ladder
    std::vector<DetectorSpec> specs = {DetectorSpec{}};
    for (const auto f : families)
        for (int l = 1; l <= opt.l_cap; ++l) specs.push_back(make_family_spec(f, l));

    for (int attempt = 0; attempt < 4; ++attempt) {
        const std::vector<double> window = {center - 1.5, center - 0.75, center, center + 0.75};
        const std::vector<BerCurve> curves = sweep_with_specs(cfg, specs, window);
        const double c_exact =
            interpolate_crossing(curves[0].snr_points, curves[0].ber, opt.target_ber);
        if (c_exact == std::numeric_limits<double>::infinity()) {
            center += 1.2;  // window sat entirely above the crossing
            continue;
        }
        if (c_exact == -std::numeric_limits<double>::infinity()) {
            center -= 1.2;
            continue;
        }

        std::vector<IterationSearchResult> results;
        for (std::size_t fi = 0; fi < families.size(); ++fi) {
            const std::size_t off = 1 + fi * static_cast<std::size_t>(opt.l_cap);
            IterationSearchResult res;
            res.method = make_family_spec(families[fi], 1).label().substr(0, 3);
            res.zeta = zeta;
            res.beta = beta;
            res.exact_crossing_db = c_exact;
            const BerCurve& top = curves[off + static_cast<std::size_t>(opt.l_cap) - 1];
            res.diverged_fraction =
                top.diverged_fraction.empty() ? 0.0 : top.diverged_fraction.front();
            for (int l = 1; l <= opt.l_cap; ++l) {
                const BerCurve& c = curves[off + static_cast<std::size_t>(l) - 1];
                const double cross = interpolate_crossing(c.snr_points, c.ber, opt.target_ber);
                const double gap = cross - c_exact;
                if (gap <= opt.max_gap_db) {
                    res.l_min = l;
                    res.gap_db = gap;
                    res.converged = true;
                    break;
                }
            }
            results.push_back(std::move(res));
        }
        return results;
    }
    throw NoConvergence("could not bracket the exact-MMSE crossing");
}

IterationSearchResult find_min_iterations_result(const SimConfig& base,
                                                 DetectorSpec::Method family, double zeta,
                                                 double beta, const IterSearchOptions& opt) {
    const DetectorSpec::Method fams[1] = {family};
    return find_min_iterations_multi(base, fams, zeta, beta, opt)[0];
}

IterationSearchResult find_min_iterations(const SimConfig& base, DetectorSpec::Method family,
                                          double zeta, double beta,
                                          const IterSearchOptions& opt) {
    IterationSearchResult res = find_min_iterations_result(base, family, zeta, beta, opt);
    if (!res.converged)
        throw NoConvergence("no L <= " + std::to_string(opt.l_cap) + " meets the criterion");
    return res;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string render_ber_csv(std::span<const BerCurve> curves) {
    std::string out = "method,snr_db,ber,bit_errors,bits,diverged_fraction,unreliable\n";
    for (const BerCurve& c : curves) {
        for (std::size_t i = 0; i < c.snr_points.size(); ++i) {
            out += c.method;
            out += ',';
            out += fmt_double(c.snr_points[i]);
            out += ',';
            out += fmt_double(c.ber[i]);
            out += ',';
            out += std::to_string(c.bit_errors[i]);
            out += ',';
            out += std::to_string(c.bits_simulated[i]);
            out += ',';
            out += fmt_double(c.diverged_fraction[i]);
            out += ',';
            out += std::to_string(static_cast<int>(c.unreliable[i]));
            out += '\n';
        }
    }
    return out;
}

EmitResult emit_results(std::span<const BerCurve> curves, const SimConfig& cfg,
                        const std::string& out_dir, const std::string& prefix,
                        const std::string& format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    EmitResult result;
    const int bps = qam::bits_per_symbol(cfg.modulation);

    nlohmann::json manifest;
    manifest["artifact_version"] = kArtifactVersion;
    manifest["config"] = nlohmann::json::parse(cfg.to_json_text());
    manifest["snr_definition"] =
        "per-user transmit SNR: SNR_linear = 1/eta2 with E{|s_k|^2} = 1";
    manifest["arithmetic"] = "double precision (no fixed-point quantization)";

    nlohmann::json cost = nlohmann::json::array();
    for (const DetectorSpec& d : cfg.detectors) {
        CostMethod m = CostMethod::Dns;
        long long l = d.l;
        switch (d.method) {
            case DetectorSpec::Method::ExactMmse:
                m = CostMethod::CholeskyDecomposition;
                l = 1;
                break;
            case DetectorSpec::Method::Dns:
                m = CostMethod::Dns;
                break;
            case DetectorSpec::Method::Tma:
            case DetectorSpec::Method::Tns:
            case DetectorSpec::Method::ImprovedNse:
                m = CostMethod::Tma;
                break;
        }
        const auto [ra, rm] = analysis::complexity_model(m, static_cast<long long>(cfg.k));
        const long long lat = analysis::latency_model(m, static_cast<long long>(cfg.k),
                                                      static_cast<long long>(cfg.n), l);
        nlohmann::json row;
        row["detector"] = d.label();
        row["model_method"] = analysis::to_string(m);
        row["real_adders"] = ra.str();
        row["real_multipliers"] = rm.str();
        row["latency_clocks"] = lat;
        row["throughput_mbps_at_225mhz"] =
            analysis::throughput_model(lat, 225.0, static_cast<long long>(cfg.k), bps, 1);
        cost.push_back(row);
    }
    manifest["cost"] = cost;

    if (curves.empty()) {
        manifest["outputs"] = nlohmann::json::array();
    } else if (format == "csv") {
        const std::string csv_path = out_dir + "/" + prefix + "_ber.csv";
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + csv_path);
        out << render_ber_csv(curves);
        result.csv_paths.push_back(csv_path);
        manifest["outputs"] = result.csv_paths;
    } else if (format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const BerCurve& c : curves) {
            nlohmann::json jc;
            jc["method"] = c.method;
            jc["snr_db"] = c.snr_points;
            jc["ber"] = c.ber;
            jc["bit_errors"] = c.bit_errors;
            jc["bits"] = c.bits_simulated;
            jc["diverged_fraction"] = c.diverged_fraction;
            std::vector<int> unrel(c.unreliable.begin(), c.unreliable.end());
            jc["unreliable"] = unrel;
            rows.push_back(jc);
        }
        const std::string json_path = out_dir + "/" + prefix + "_ber.json";
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + json_path);
        out << rows.dump(2) << '\n';
        result.csv_paths.push_back(json_path);
        manifest["outputs"] = result.csv_paths;
    } else {
        throw ConfigInvalid("unknown format: " + format);
    }

    const std::string manifest_path = out_dir + "/" + prefix + "_manifest.json";
    std::ofstream mout(manifest_path, std::ios::binary);
    if (!mout) throw IoError("cannot write " + manifest_path);
    mout << manifest.dump(2) << '\n';
    result.manifest_path = manifest_path;
    return result;
}

}  // namespace mimo::sim
