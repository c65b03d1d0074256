#include "mimo/analysis.hpp"

#include <cmath>
#include <numeric>

namespace mimo {

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace analysis {

double theta_norm(const HermitianMatrix& w, InitializerKind kind) {
    const NseState st = detect::build_initializer(w, kind);
    return st.theta_fro;
}

double residual_phi(const HermitianMatrix& w, InitializerKind kind, int l,
                    std::span<const cplx> s_hat_exact) {
    if (l < 1) throw ConfigInvalid("residual order must be >= 1");
    if (s_hat_exact.size() != w.dim()) throw DimensionMismatch();
    const NseState st = detect::build_initializer(w, kind);
    std::vector<cplx> v(s_hat_exact.begin(), s_hat_exact.end());
    for (int t = 0; t < l; ++t) v = linalg::multiply(st.theta, v);
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return s;
}

DominanceReport dominance_report(const HermitianMatrix& w) {
    const std::size_t k = w.dim();
    if (k < 2) throw TooSmall();
    const Matrix dense = w.to_matrix();

    DominanceReport rep;
    rep.band_l1.resize(2 * k - 1);
    double total = 0.0;
    for (long off = -(static_cast<long>(k) - 1); off <= static_cast<long>(k) - 1; ++off) {
        const double v = linalg::band_l1_norm(dense, off);
        rep.band_l1[static_cast<std::size_t>(off + static_cast<long>(k) - 1)] = v;
        total += v;
    }
    const double dia = rep.band_l1[k - 1];
    const double sub = rep.band_l1[k - 2] + rep.band_l1[k];
    const double off_dia = total - dia;
    const double off_tri = total - dia - sub;
    rep.ratio_dia = off_dia > 0.0 ? dia / off_dia : kDominanceRatioCap;
    rep.ratio_tri = off_tri > 0.0 ? (dia + sub) / off_tri : kDominanceRatioCap;
    return rep;
}

namespace {

Rational reduced(long long num, long long den) {
    const long long g = std::gcd(num, den);
    return {num / g, den / g};
}

}  // namespace

std::pair<Rational, Rational> complexity_model(CostMethod method, long long k) {
    if (k < 1) throw ConfigInvalid("K must be >= 1");
    switch (method) {
        case CostMethod::Dns:
            return {Rational{2 * k * k + 8 * k + 1, 1}, Rational{2 * k * k + 10 * k, 1}};
        case CostMethod::Tma:
            return {Rational{2 * k * k + 16 * k + 12, 1}, Rational{2 * k * k + 18 * k + 12, 1}};
        case CostMethod::CholeskyDecomposition:
            return {reduced(2 * k * k * k + 4 * k, 3), reduced(6 * k * k * k + 3 * k * k + k, 3)};
    }
    throw UnknownMethod("cost method");
}

long long latency_model(CostMethod method, long long k, long long n, long long l) {
    if (k < 1 || n < 1) throw ConfigInvalid("K and N must be >= 1");
    switch (method) {
        case CostMethod::CholeskyDecomposition:
            return n + 4 * k + 5;
        case CostMethod::Dns:
            if (l < 1) throw ConfigInvalid("L must be >= 1");
            return l * (k + 1) + n + 2 * k - 4;
        case CostMethod::Tma:
            if (l < 1) throw ConfigInvalid("L must be >= 1");
            return l * (k + 1) + n + 2 * k - 2;
    }
    throw UnknownMethod("cost method");
}

double throughput_model(long long latency_clocks, double clock_mhz, long long k,
                        long long bits_per_symbol, long long instances) {
    if (latency_clocks <= 0) throw ConfigInvalid("latency must be positive");
    return static_cast<double>(instances * k * bits_per_symbol) * clock_mhz /
           static_cast<double>(latency_clocks);
}

CostMethod cost_method_from_string(const std::string& s) {
    if (s == "cd" || s == "cholesky" || s == "exact") return CostMethod::CholeskyDecomposition;
    if (s == "dns") return CostMethod::Dns;
    if (s == "tma") return CostMethod::Tma;
    throw UnknownMethod(s);
}

std::string to_string(CostMethod m) {
    switch (m) {
        case CostMethod::CholeskyDecomposition:
            return "cd";
        case CostMethod::Dns:
            return "dns";
        case CostMethod::Tma:
            return "tma";
    }
    return "?";
}

}  // namespace analysis
}  // namespace mimo
