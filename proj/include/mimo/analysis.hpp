#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mimo/detectors.hpp"
#include "mimo/linalg.hpp"

namespace mimo {

// Band-dominance figures for one filtering matrix. Ratios with an exactly
// zero denominator are reported as kDominanceRatioCap, never infinity.
struct DominanceReport {
    double ratio_dia = 0.0;       // ||W_dia||_1 / ||W - W_dia||_1
    double ratio_tri = 0.0;       // ||W_tri||_1 / ||W - W_tri||_1
    std::vector<double> band_l1;  // entrywise l1 per diagonal, k = -(K-1)..K-1
};

inline constexpr double kDominanceRatioCap = 1e18;

// Exact rational so the cost tables carry no floating-point drift.
struct Rational {
    long long num = 0;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool integral() const { return den == 1; }
    std::string str() const;
};

enum class CostMethod { CholeskyDecomposition, Dns, Tma };

struct CostReport {
    std::string method;
    Rational real_adders;
    Rational real_multipliers;
    long long latency_clocks = 0;
    double throughput_mbps = 0.0;
};

namespace analysis {

double theta_norm(const HermitianMatrix& w, InitializerKind kind);

// Residual detection error ||Theta^L s_exact||_2^2.
double residual_phi(const HermitianMatrix& w, InitializerKind kind, int l,
                    std::span<const cplx> s_hat_exact);

DominanceReport dominance_report(const HermitianMatrix& w);

// (real adders, real multipliers) for one K-user detection.
std::pair<Rational, Rational> complexity_model(CostMethod method, long long k);

long long latency_model(CostMethod method, long long k, long long n, long long l);

double throughput_model(long long latency_clocks, double clock_mhz, long long k,
                        long long bits_per_symbol, long long instances);

CostMethod cost_method_from_string(const std::string& s);
std::string to_string(CostMethod m);

}  // namespace analysis
}  // namespace mimo
