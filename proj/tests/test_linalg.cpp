#include <cmath>

#include "doctest.h"
#include "mimo/linalg.hpp"
#include "mimo/rng.hpp"

using namespace mimo;
using namespace mimo::linalg;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

HermitianMatrix random_pd(std::size_t k, Rng& rng) {
    const Matrix a = random_matrix(2 * k, k, rng);
    HermitianMatrix w = hermitian_product(a);
    for (std::size_t i = 0; i < k; ++i) w.set_lower(i, i, w(i, i).real() + 1.0);
    return w;
}

}  // namespace

TEST_CASE("lp_norm basics") {
    std::vector<cplx> v34 = {cplx(3, 0), cplx(4, 0)};
    CHECK(lp_norm(v34, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    std::vector<cplx> ones = {1.0, 1.0, 1.0};
    CHECK(lp_norm(ones, 1.0) == doctest::Approx(3.0).epsilon(1e-14));

    CHECK_THROWS_AS(lp_norm(std::vector<cplx>{}, 2.0), EmptyVector);
    CHECK_THROWS_AS(lp_norm(ones, 0.5), InvalidP);
}

TEST_CASE("lp_norm against scalar-loop oracle") {
    Rng rng(42);
    std::vector<cplx> v(8);
    for (auto& x : v) x = rng.complex_gaussian();
    double expect = 0.0;
    for (const auto& x : v) expect += std::hypot(x.real(), x.imag());
    CHECK(lp_norm(v, 1.0) == doctest::Approx(expect).epsilon(1e-12));

    double e3 = 0.0;
    for (const auto& x : v) e3 += std::pow(std::abs(x), 3.0);
    CHECK(lp_norm(v, 3.0) == doctest::Approx(std::pow(e3, 1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("frobenius_norm") {
    CHECK(frobenius_norm(Matrix::identity(4)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(frobenius_norm(Matrix(3, 3)) == 0.0);
    CHECK_THROWS_AS(frobenius_norm(Matrix()), EmptyMatrix);

    Rng rng(7);
    const Matrix m = random_matrix(6, 6, rng);
    double s = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) s += std::norm(m(i, j));
    CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
}

TEST_CASE("diag_band extraction and reassembly") {
    const Matrix i4 = Matrix::identity(4);
    const DiagonalBand d0 = diag_band(i4, 0);
    REQUIRE(d0.values.size() == 4);
    for (const auto& v : d0.values) CHECK(v == cplx(1.0, 0.0));
    const DiagonalBand d1 = diag_band(i4, 1);
    REQUIRE(d1.values.size() == 3);
    for (const auto& v : d1.values) CHECK(v == cplx(0.0, 0.0));
    CHECK_THROWS_AS(diag_band(i4, 4), OffsetOutOfRange);
    CHECK_THROWS_AS(diag_band(i4, -4), OffsetOutOfRange);

    // sum of all bands rebuilds the matrix exactly (bitwise)
    Rng rng(3);
    const Matrix m = random_matrix(5, 5, rng);
    Matrix re(5, 5);
    for (long k = -4; k <= 4; ++k) {
        const DiagonalBand band = diag_band(m, k);
        for (std::size_t t = 0; t < band.values.size(); ++t) {
            const std::size_t i = k >= 0 ? t + static_cast<std::size_t>(k) : t;
            const std::size_t j = k >= 0 ? t : t + static_cast<std::size_t>(-k);
            re(i, j) = band.values[t];
        }
    }
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(re(i, j) == m(i, j));
}

TEST_CASE("band_l1_norm") {
    const Matrix i4 = Matrix::identity(4);
    CHECK(band_l1_norm(i4, 0) == doctest::Approx(4.0));
    CHECK(band_l1_norm(i4, 2) == doctest::Approx(0.0));
}

TEST_CASE("hermitian_product") {
    const Matrix i3 = Matrix::identity(3);
    const HermitianMatrix w = hermitian_product(i3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(w(i, j) == (i == j ? cplx(1, 0) : cplx(0, 0)));

    Matrix col(5, 1);
    for (std::size_t i = 0; i < 5; ++i) col(i, 0) = 1.0;
    CHECK(hermitian_product(col)(0, 0) == cplx(5.0, 0.0));

    Rng rng(11);
    const Matrix g = random_matrix(8, 3, rng);
    const HermitianMatrix got = hermitian_product(g);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            cplx expect = 0.0;
            for (std::size_t r = 0; r < 8; ++r) expect += std::conj(g(r, i)) * g(r, j);
            CHECK(std::abs(got(i, j) - expect) < 1e-12);
        }
    }
}

TEST_CASE("hermitian storage is conjugate-mirrored bit-exactly") {
    Rng rng(19);
    const HermitianMatrix w = random_pd(9, rng);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(w(i, i).imag() == 0.0);
        for (std::size_t j = 0; j < 9; ++j) {
            CHECK(w(i, j).real() == w(j, i).real());
            CHECK(w(i, j).imag() == -w(j, i).imag());
        }
    }
}

TEST_CASE("cholesky_factor") {
    HermitianMatrix d(2);
    d.set_lower(0, 0, 4.0);
    d.set_lower(1, 1, 9.0);
    const Matrix l = cholesky_factor(d);
    CHECK(l(0, 0) == cplx(2.0, 0.0));
    CHECK(l(1, 1) == cplx(3.0, 0.0));
    CHECK(l(1, 0) == cplx(0.0, 0.0));

    const Matrix li = cholesky_factor(HermitianMatrix::identity(5));
    CHECK(frobenius_norm(li) == doctest::Approx(std::sqrt(5.0)));

    Rng rng(23);
    const HermitianMatrix w = random_pd(10, rng);
    const Matrix lw = cholesky_factor(w);
    const Matrix back = multiply(lw, conj_transpose(lw));
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j) {
            err += std::norm(back(i, j) - w(i, j));
            ref += std::norm(w(i, j));
        }
    CHECK(std::sqrt(err) < 1e-10 * std::sqrt(ref));

    HermitianMatrix indef(2);
    indef.set_lower(0, 0, 1.0);
    indef.set_lower(1, 1, 1.0);
    indef.set_lower(1, 0, 2.0);  // eigenvalues -1, 3
    CHECK_THROWS_AS(cholesky_factor(indef), NotPositiveDefinite);
}

TEST_CASE("cholesky_solve") {
    const HermitianMatrix i4 = HermitianMatrix::identity(4);
    Rng rng(29);
    std::vector<cplx> b(4);
    for (auto& x : b) x = rng.complex_gaussian();
    const std::vector<cplx> x = cholesky_solve(i4, b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(x[i] - b[i]) < 1e-14);

    HermitianMatrix d(2);
    d.set_lower(0, 0, 2.0);
    d.set_lower(1, 1, 4.0);
    const std::vector<cplx> rhs = {cplx(2, 0), cplx(4, 0)};
    const std::vector<cplx> sol = cholesky_solve(d, rhs);
    CHECK(std::abs(sol[0] - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(sol[1] - cplx(1, 0)) < 1e-14);

    const HermitianMatrix w = random_pd(12, rng);
    std::vector<cplx> b2(12);
    for (auto& v : b2) v = rng.complex_gaussian();
    const std::vector<cplx> x2 = cholesky_solve(w, b2);
    const std::vector<cplx> wx = multiply(w.to_matrix(), x2);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 12; ++i) {
        num += std::norm(wx[i] - b2[i]);
        den += std::norm(b2[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-10);

    CHECK_THROWS_AS(cholesky_solve(w, b), DimensionMismatch);
}

TEST_CASE("hermitian_sqrt") {
    const HermitianMatrix s1 = hermitian_sqrt(HermitianMatrix::identity(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(s1(i, j) - (i == j ? cplx(1, 0) : cplx(0, 0))) < 1e-12);

    HermitianMatrix d(2);
    d.set_lower(0, 0, 4.0);
    d.set_lower(1, 1, 1.0);
    const HermitianMatrix sd = hermitian_sqrt(d);
    CHECK(std::abs(sd(0, 0) - cplx(2, 0)) < 1e-12);
    CHECK(std::abs(sd(1, 1) - cplx(1, 0)) < 1e-12);

    HermitianMatrix indef(2);
    indef.set_lower(0, 0, 0.0);
    indef.set_lower(1, 1, 0.0);
    indef.set_lower(1, 0, 1.0);
    CHECK_THROWS_AS(hermitian_sqrt(indef), NotPsd);
}

TEST_CASE("hermitian_sqrt reconstructs an exponential correlation matrix") {
    const std::size_t n = 16;
    const double zeta = 0.5;
    HermitianMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) r.set_lower(i, j, std::pow(zeta, double(i - j)));
    const HermitianMatrix s = hermitian_sqrt(r);
    const Matrix ss = multiply(s.to_matrix(), s.to_matrix());
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            err += std::norm(ss(i, j) - r(i, j));
            ref += std::norm(r(i, j));
        }
    CHECK(std::sqrt(err) < 1e-8 * std::sqrt(ref));
}

TEST_CASE("rank-deficient PSD square root (full correlation)") {
    const std::size_t n = 8;
    HermitianMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) r.set_lower(i, j, 1.0);  // ones matrix, rank 1
    const HermitianMatrix s = hermitian_sqrt(r);
    const Matrix ss = multiply(s.to_matrix(), s.to_matrix());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(ss(i, j) - cplx(1, 0)) < 1e-8);
}

TEST_CASE("hermitian_eig reconstructs") {
    Rng rng(31);
    const HermitianMatrix w = random_pd(14, rng);
    Matrix v;
    const std::vector<double> lam = hermitian_eig(w, v);
    for (std::size_t t = 1; t < lam.size(); ++t) CHECK(lam[t] >= lam[t - 1]);
    // W v_t = lam_t v_t
    for (std::size_t t = 0; t < 14; ++t) {
        std::vector<cplx> col(14);
        for (std::size_t i = 0; i < 14; ++i) col[i] = v(i, t);
        const std::vector<cplx> wv = multiply(w.to_matrix(), col);
        for (std::size_t i = 0; i < 14; ++i) CHECK(std::abs(wv[i] - lam[t] * col[i]) < 1e-9);
    }
}
