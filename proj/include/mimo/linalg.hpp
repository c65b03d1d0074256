#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mimo/errors.hpp"

namespace mimo {

using cplx = std::complex<double>;

// Dense row-major complex matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

// Hermitian matrix with the lower triangle authoritative: every write goes
// through set_lower, which mirrors the conjugate into the upper triangle, so
// a_ij == conj(a_ji) holds bit-exactly and the diagonal stays real.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static HermitianMatrix identity(std::size_t n) {
        HermitianMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.set_lower(i, i, 1.0);
        return m;
    }

    std::size_t dim() const { return dim_; }
    bool empty() const { return data_.empty(); }

    // i >= j required; the (j,i) mirror is written as conj(v), diagonal
    // imaginary parts are dropped.
    void set_lower(std::size_t i, std::size_t j, cplx v) {
        if (i == j) v = cplx(v.real(), 0.0);
        data_[i * dim_ + j] = v;
        data_[j * dim_ + i] = std::conj(v);
    }

    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    Matrix to_matrix() const {
        Matrix m(dim_, dim_);
        for (std::size_t i = 0; i < dim_ * dim_; ++i) m.data()[i] = data_[i];
        return m;
    }

    std::span<const cplx> data() const { return data_; }

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

struct DiagonalBand {
    long offset = 0;             // k > 0 selects the k-th sub-diagonal
    std::vector<cplx> values;    // length dim - |k|
};

namespace linalg {

double lp_norm(std::span<const cplx> v, double p);
double frobenius_norm(const Matrix& a);

DiagonalBand diag_band(const Matrix& a, long k);
double band_l1_norm(const Matrix& a, long k);

// Gram product A^H A with the lower triangle computed directly and the upper
// mirrored, so the result is Hermitian in storage, not just numerically.
HermitianMatrix hermitian_product(const Matrix& a);

// Lower-triangular L with L L^H = W and a real positive diagonal.
Matrix cholesky_factor(const HermitianMatrix& w);
std::vector<cplx> cholesky_solve(const HermitianMatrix& w, std::span<const cplx> b);
std::vector<cplx> cholesky_solve(const Matrix& chol_lower, std::span<const cplx> b);

// Hermitian PSD square root via eigendecomposition; eigenvalues in
// [-tol, 0) are clamped to zero (rank-deficient inputs are legitimate).
HermitianMatrix hermitian_sqrt(const HermitianMatrix& r);

// Jacobi eigendecomposition of a Hermitian matrix: returns eigenvalues
// (ascending) and fills V with the corresponding eigenvectors as columns.
std::vector<double> hermitian_eig(const HermitianMatrix& a, Matrix& v);

// Dense helpers shared across modules.
Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<cplx> multiply(const Matrix& a, std::span<const cplx> x);
Matrix conj_transpose(const Matrix& a);
double max_hermitian_defect(const Matrix& a);  // max |a_ij - conj(a_ji)|

}  // namespace linalg
}  // namespace mimo
