#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mimo/channel.hpp"
#include "mimo/detectors.hpp"
#include "mimo/qam.hpp"

namespace mimo {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Sweep-level configuration. The SNR convention throughout is per-user
// transmit SNR: SNR_linear = 1 / eta2, given E{|s_k|^2} = 1. A sweep is
// specified either in dB (snr_db) or directly as noise powers (eta2).
struct SimConfig {
    std::size_t n = 128;
    std::size_t k = 8;
    double zeta = 0.0;
    PhaseMode phase_mode = PhaseMode::Zero;
    std::uint64_t phase_seed = 0;
    std::vector<double> snr_db;  // exactly one of snr_db / eta2 may be set
    std::vector<double> eta2;
    Modulation modulation = Modulation::Qam64;
    std::vector<DetectorSpec> detectors;
    std::size_t trials = 1000;  // minimum realizations per SNR point
    std::uint64_t master_seed = 1;
    std::size_t min_bit_errors = 200;
    std::size_t frames_per_realization = 1;
    std::uint64_t max_bits_per_point = 10'000'000;
    std::vector<double> sigma;  // per-user path loss; empty = all ones
    std::string output_path = "out";
    int workers = 0;  // 0 = runtime default

    std::size_t sweep_size() const { return snr_db.empty() ? eta2.size() : snr_db.size(); }
    double snr_db_at(std::size_t i) const;
    double eta2_at(std::size_t i) const;
    PathLossSpec path_loss() const;
    void validate() const;

    static SimConfig from_json_file(const std::string& path);
    static SimConfig from_json_text(const std::string& text);
    std::string to_json_text() const;  // re-ingestable
};

struct BerCurve {
    std::string method;
    std::vector<double> snr_points;  // dB
    std::vector<double> ber;
    std::vector<std::uint64_t> bit_errors;
    std::vector<std::uint64_t> bits_simulated;
    std::vector<double> diverged_fraction;
    std::vector<std::uint8_t> unreliable;  // 1 when below the error floor target
};

struct IterationSearchResult {
    std::string method;
    double zeta = 0.0;
    double beta = 0.0;
    int l_min = 0;  // 0 when the cap was reached without meeting the criterion
    double gap_db = std::numeric_limits<double>::infinity();
    double exact_crossing_db = 0.0;
    bool converged = false;
    double diverged_fraction = 0.0;  // fraction of realizations with ||Theta||_F >= 1
};

namespace sim {

std::vector<BerCurve> run_ber_sweep(const SimConfig& cfg);

// SNR (dB) where the log-BER curve crosses target; +inf when it never does,
// -inf when already below target at the first point.
double interpolate_crossing(std::span<const double> snr_db, std::span<const double> ber,
                            double target);

struct IterSearchOptions {
    int l_cap = 64;
    double max_gap_db = 0.3;
    double target_ber = 1e-3;
};

// Smallest L (linear scan from 1) whose BER curve crosses target_ber within
// max_gap_db of the exact-MMSE crossing. Never throws on a cap miss; the
// result carries converged = false instead.
IterationSearchResult find_min_iterations_result(const SimConfig& base,
                                                 DetectorSpec::Method family, double zeta,
                                                 double beta, const IterSearchOptions& opt = {});

// Same search for several families at once, sharing channel realizations and
// the exact-MMSE reference between them.
std::vector<IterationSearchResult> find_min_iterations_multi(
    const SimConfig& base, std::span<const DetectorSpec::Method> families, double zeta,
    double beta, const IterSearchOptions& opt = {});

// Spec'd front-end: throws NoConvergence when the cap is reached.
IterationSearchResult find_min_iterations(const SimConfig& base, DetectorSpec::Method family,
                                          double zeta, double beta,
                                          const IterSearchOptions& opt = {});

struct EmitResult {
    std::vector<std::string> csv_paths;
    std::string manifest_path;
};

// One CSV per sweep plus a JSON manifest that can be fed back through
// --config to reproduce the run bit-for-bit.
EmitResult emit_results(std::span<const BerCurve> curves, const SimConfig& cfg,
                        const std::string& out_dir, const std::string& prefix,
                        const std::string& format = "csv");

std::string render_ber_csv(std::span<const BerCurve> curves);

}  // namespace sim
}  // namespace mimo
