#include "mimo/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mimo::linalg {

double lp_norm(std::span<const cplx> v, double p) {
    if (v.empty()) throw EmptyVector();
    if (!(p >= 1.0)) throw InvalidP();
    if (p == 1.0) {
        double s = 0.0;
        for (const auto& x : v) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (const auto& x : v) s += std::norm(x);
        return std::sqrt(s);
    }
    double s = 0.0;
    for (const auto& x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

double frobenius_norm(const Matrix& a) {
    if (a.empty()) throw EmptyMatrix();
    double s = 0.0;
    for (const auto& x : a.data()) s += std::norm(x);
    return std::sqrt(s);
}

DiagonalBand diag_band(const Matrix& a, long k) {
    const long n = static_cast<long>(std::min(a.rows(), a.cols()));
    if (std::labs(k) >= n) throw OffsetOutOfRange();
    DiagonalBand band;
    band.offset = k;
    const long len = (k >= 0) ? static_cast<long>(a.rows()) - k : static_cast<long>(a.cols()) + k;
    band.values.reserve(static_cast<std::size_t>(len));
    for (long t = 0; t < len; ++t) {
        const long i = (k >= 0) ? t + k : t;
        const long j = (k >= 0) ? t : t - k;
        band.values.push_back(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
    return band;
}

double band_l1_norm(const Matrix& a, long k) {
    const DiagonalBand band = diag_band(a, k);
    return lp_norm(band.values, 1.0);
}

HermitianMatrix hermitian_product(const Matrix& a) {
    const std::size_t n = a.rows(), k = a.cols();
    if (n == 0 || k == 0) throw EmptyMatrix();
    HermitianMatrix w(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += std::conj(a(r, i)) * a(r, j);
            w.set_lower(i, j, s);
        }
    }
    return w;
}

Matrix cholesky_factor(const HermitianMatrix& w) {
    const std::size_t n = w.dim();
    if (n == 0) throw EmptyMatrix();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, w(i, i).real());
    const double tol = 1e-12 * max_diag;

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = w(j, j).real();
        for (std::size_t t = 0; t < j; ++t) d -= std::norm(l(j, t));
        if (!(d > tol)) throw NotPositiveDefinite(j);
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = w(i, j);
            for (std::size_t t = 0; t < j; ++t) s -= l(i, t) * std::conj(l(j, t));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

std::vector<cplx> cholesky_solve(const Matrix& chol_lower, std::span<const cplx> b) {
    const std::size_t n = chol_lower.rows();
    if (b.size() != n) throw DimensionMismatch();
    std::vector<cplx> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = b[i];
        for (std::size_t t = 0; t < i; ++t) s -= chol_lower(i, t) * y[t];
        y[i] = s / chol_lower(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) {
        cplx s = y[ii];
        for (std::size_t t = ii + 1; t < n; ++t) s -= std::conj(chol_lower(t, ii)) * x[t];
        x[ii] = s / chol_lower(ii, ii).real();
    }
    return x;
}

std::vector<cplx> cholesky_solve(const HermitianMatrix& w, std::span<const cplx> b) {
    if (b.size() != w.dim()) throw DimensionMismatch();
    return cholesky_solve(cholesky_factor(w), b);
}

namespace {

double off_diag_norm(const Matrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
}

}  // namespace

std::vector<double> hermitian_eig(const HermitianMatrix& a, Matrix& v) {
    const std::size_t n = a.dim();
    Matrix m = a.to_matrix();
    v = Matrix::identity(n);
    if (n == 0) throw EmptyMatrix();

    double scale = 0.0;
    for (const auto& x : m.data()) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;
    const double stop = 1e-14 * scale * static_cast<double>(n);

    // cyclic Jacobi with complex rotations
    for (int sweep = 0; sweep < 60 && off_diag_norm(m) > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                // phase that makes the pivot real, then a real Jacobi rotation
                const cplx phase = apq / std::abs(apq);
                const double g = std::abs(apq);
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx sp = s * phase;  // rotation applies conj where needed

                for (std::size_t r = 0; r < n; ++r) {
                    const cplx mrp = m(r, p), mrq = m(r, q);
                    m(r, p) = c * mrp - std::conj(sp) * mrq;
                    m(r, q) = sp * mrp + c * mrq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx mpr = m(p, r), mqr = m(q, r);
                    m(p, r) = c * mpr - sp * mqr;
                    m(q, r) = std::conj(sp) * mpr + c * mqr;
                }
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - std::conj(sp) * vrq;
                    v(r, q) = sp * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = m(i, i).real();

    // sort ascending, reorder eigenvectors accordingly
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return w[x] < w[y]; });
    std::vector<double> ws(n);
    Matrix vs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        ws[j] = w[order[j]];
        for (std::size_t i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
    }
    v = std::move(vs);
    return ws;
}

HermitianMatrix hermitian_sqrt(const HermitianMatrix& r) {
    const std::size_t n = r.dim();
    Matrix v;
    const std::vector<double> w = hermitian_eig(r, v);

    double fro = 0.0;
    for (const auto& x : r.data()) fro += std::norm(x);
    fro = std::sqrt(fro);
    const double tol = 1e-8 * std::max(fro, 1.0e-300);
    for (double lam : w)
        if (lam < -tol) throw NotPsd();

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(std::max(w[i], 0.0));

    // S = V sqrt(D) V^H, filled through the Hermitian lower triangle
    HermitianMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < n; ++t) acc += v(i, t) * sq[t] * std::conj(v(j, t));
            s.set_lower(i, j, acc);
        }
    }
    return s;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch();
    Matrix c(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        cplx* ci = &c(i, 0);
        for (std::size_t t = 0; t < k; ++t) {
            const cplx ait = a(i, t);
            const cplx* bt = &b(t, 0);
            for (std::size_t j = 0; j < m; ++j) ci[j] += ait * bt[j];
        }
    }
    return c;
}

std::vector<cplx> multiply(const Matrix& a, std::span<const cplx> x) {
    if (a.cols() != x.size()) throw DimensionMismatch();
    std::vector<cplx> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix conj_transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

double max_hermitian_defect(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch();
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

}  // namespace mimo::linalg
