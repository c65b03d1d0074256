#include "mimo/tridiag.hpp"

#include <cmath>

namespace mimo {

Matrix TridiagonalHermitian::to_matrix() const {
    const std::size_t k = dim();
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = b[i];
    for (std::size_t i = 0; i + 1 < k; ++i) {
        m(i + 1, i) = a[i];
        m(i, i + 1) = std::conj(a[i]);
    }
    return m;
}

Matrix BandedInverse::to_matrix() const {
    const std::size_t k = dim();
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = phi_diag[i];
    for (std::size_t i = 0; i + 1 < k; ++i) {
        m(i + 1, i) = phi_sub[i];
        m(i, i + 1) = std::conj(phi_sub[i]);
    }
    return m;
}

namespace tridiag {
namespace {

constexpr double kTiny = 1e-300;

void check_divisor(double v, std::size_t index) {
    if (std::abs(v) < kTiny) throw DegenerateDivision(index);
}

// forward pivots q_i = z_i / z_{i-1}
std::vector<double> forward_ratios(const TridiagonalHermitian& t) {
    const std::size_t k = t.dim();
    std::vector<double> q(k);
    q[0] = t.b[0];
    for (std::size_t i = 1; i < k; ++i) {
        if (std::abs(q[i - 1]) < kTiny) throw DegenerateRecurrence(i - 1);
        q[i] = t.b[i] - std::norm(t.a[i - 1]) / q[i - 1];
    }
    return q;
}

// backward pivots s_j = y_j / y_{j+1}
std::vector<double> backward_ratios(const TridiagonalHermitian& t) {
    const std::size_t k = t.dim();
    std::vector<double> s(k);
    s[k - 1] = t.b[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) {
        if (std::abs(s[j + 1]) < kTiny) throw DegenerateRecurrence(j + 1);
        s[j] = t.b[j] - std::norm(t.a[j]) / s[j + 1];
    }
    return s;
}

}  // namespace

TridiagonalHermitian extract_tridiagonal(const HermitianMatrix& w) {
    const std::size_t k = w.dim();
    if (k < 2) throw TooSmall();
    TridiagonalHermitian t;
    t.b.resize(k);
    t.a.resize(k - 1);
    for (std::size_t i = 0; i < k; ++i) t.b[i] = w(i, i).real();
    for (std::size_t i = 0; i + 1 < k; ++i) t.a[i] = w(i + 1, i);
    return t;
}

HermitianMatrix exact_inverse(const TridiagonalHermitian& t) {
    const std::size_t k = t.dim();
    const std::vector<double> q = forward_ratios(t);
    const std::vector<double> s = backward_ratios(t);

    HermitianMatrix inv(k);
    for (std::size_t j = 0; j < k; ++j) {
        double denom = q[j];
        if (j + 1 < k) denom -= std::norm(t.a[j]) / s[j + 1];
        if (std::abs(denom) < kTiny) throw DegenerateRecurrence(j);
        const double phi_jj = 1.0 / denom;
        inv.set_lower(j, j, phi_jj);
        cplx run = phi_jj;
        for (std::size_t r = j + 1; r < k; ++r) {
            if (std::abs(s[r]) < kTiny) throw DegenerateRecurrence(r);
            run *= -t.a[r - 1] / s[r];
            inv.set_lower(r, j, run);
        }
    }
    return inv;
}

BandedInverse banded_inverse_alg1(const TridiagonalHermitian& t) {
    const std::size_t k = t.dim();
    BandedInverse out;
    out.phi_diag.resize(k);
    out.phi_sub.resize(k > 0 ? k - 1 : 0);
    if (k == 1) {
        check_divisor(t.b[0], 0);
        out.phi_diag[0] = 1.0 / t.b[0];
        return out;
    }

    // forward elimination, updated diagonal u_i and corrected denominator p_i
    // kept in band-local storage
    std::vector<cplx> u(k), p(k), neg_ratio(k);
    u[0] = t.b[0];
    check_divisor(t.b[1], 1);
    p[0] = t.b[0] - t.a[0] * std::conj(t.a[0]) / t.b[1];
    for (std::size_t i = 1; i < k; ++i) {
        check_divisor(std::abs(u[i - 1]), i - 1);
        const cplx ratio = t.a[i - 1] / u[i - 1];
        neg_ratio[i] = -ratio;
        u[i] = t.b[i] - ratio * std::conj(t.a[i - 1]);
        if (i + 1 < k) {
            check_divisor(t.b[i + 1], i + 1);
            p[i] = u[i] - t.a[i] * std::conj(t.a[i]) / t.b[i + 1];
        } else {
            p[i] = u[i];
        }
    }

    out.phi_diag[0] = 1.0 / p[0];
    for (std::size_t i = 1; i < k; ++i) {
        check_divisor(std::abs(p[i]), i);
        out.phi_diag[i] = 1.0 / p[i];
        out.phi_sub[i - 1] = neg_ratio[i] / p[i];
    }
    return out;
}

BandedInverse banded_inverse_alg2(const TridiagonalHermitian& t, Alg2Stats* stats) {
    const std::size_t k = t.dim();
    BandedInverse out;
    out.phi_diag.resize(k);
    out.phi_sub.resize(k > 0 ? k - 1 : 0);
    std::size_t clocks = 0;
    if (k == 1) {
        check_divisor(t.b[0], 0);
        out.phi_diag[0] = 1.0 / t.b[0];
        clocks = 2;
        if (stats != nullptr) stats->clocks = clocks;
        return out;
    }

    std::vector<cplx> u(k), p(k), neg_ratio(k);
    u[0] = t.b[0];
    check_divisor(t.b[1], 1);
    p[0] = t.b[0] - t.a[0] * std::conj(t.a[0]) / t.b[1];
    clocks += 2;  // the initial denominator occupies one folded index
    for (std::size_t i = 1; i < k; ++i) {
        // clock phase 1: elimination against the previous row
        check_divisor(std::abs(u[i - 1]), i - 1);
        const cplx ratio1 = t.a[i - 1] / u[i - 1];
        neg_ratio[i] = -ratio1;
        u[i] = t.b[i] - ratio1 * std::conj(t.a[i - 1]);
        ++clocks;
        // clock phase 2: correction from the next row, reusing the same
        // divide/multiply-subtract units
        if (i + 1 < k) {
            check_divisor(t.b[i + 1], i + 1);
            const cplx ratio2 = t.a[i] / t.b[i + 1];
            p[i] = u[i] - ratio2 * std::conj(t.a[i]);
        } else {
            p[i] = u[i];
        }
        ++clocks;
    }

    out.phi_diag[0] = 1.0 / p[0];
    for (std::size_t i = 1; i < k; ++i) {
        check_divisor(std::abs(p[i]), i);
        out.phi_diag[i] = 1.0 / p[i];
        out.phi_sub[i - 1] = neg_ratio[i] / p[i];
    }
    if (stats != nullptr) stats->clocks = clocks;
    return out;
}

RecurrenceState qp_recurrence(const TridiagonalHermitian& t) {
    const std::size_t k = t.dim();
    RecurrenceState st;
    st.z.resize(k + 1);
    st.q.resize(k);
    st.p.resize(k);

    st.z[0] = 1.0;
    st.z[1] = t.b[0];
    for (std::size_t i = 2; i <= k; ++i)
        st.z[i] = t.b[i - 1] * st.z[i - 1] - std::norm(t.a[i - 2]) * st.z[i - 2];

    st.q[0] = t.b[0];
    for (std::size_t i = 1; i < k; ++i) {
        if (std::abs(st.q[i - 1]) < kTiny) throw DegenerateDivision(i - 1);
        st.q[i] = t.b[i] - std::norm(t.a[i - 1]) / st.q[i - 1];
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (i + 1 < k) {
            check_divisor(t.b[i + 1], i + 1);
            st.p[i] = st.q[i] - std::norm(t.a[i]) / t.b[i + 1];
        } else {
            st.p[i] = st.q[i];
        }
    }
    return st;
}

double p_attenuation_statistic(std::span<const TridiagonalHermitian> ensemble) {
    if (ensemble.empty()) throw EmptyVector();
    double acc = 0.0;
    for (const TridiagonalHermitian& t : ensemble) {
        const std::size_t k = t.dim();
        const std::vector<double> q = forward_ratios(t);
        double sum = 0.0;  // entry for the first index is zero (no sub-diagonal above row 1)
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (std::abs(q[i + 1]) < kTiny) throw DegenerateRecurrence(i + 1);
            sum += std::abs(t.a[i]) / std::abs(q[i + 1]);
        }
        acc += sum / static_cast<double>(k);
    }
    return acc / static_cast<double>(ensemble.size());
}

}  // namespace tridiag
}  // namespace mimo
