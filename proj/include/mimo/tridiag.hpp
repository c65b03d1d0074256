#pragma once

#include <span>
#include <vector>

#include "mimo/linalg.hpp"

namespace mimo {

// Hermitian tridiagonal matrix in banded storage: real main diagonal b and
// complex sub-diagonal a (a[i] sits at row i+1, column i); the super-diagonal
// is conj(a) implicitly.
struct TridiagonalHermitian {
    std::vector<double> b;  // length K
    std::vector<cplx> a;    // length K-1

    std::size_t dim() const { return b.size(); }
    Matrix to_matrix() const;
};

// Tridiagonal band of an (approximate) inverse: main diagonal phi_diag (real
// for Hermitian PD input) and sub-diagonal phi_sub; the super-diagonal is
// conj(phi_sub).
struct BandedInverse {
    std::vector<cplx> phi_diag;  // length K
    std::vector<cplx> phi_sub;   // length K-1

    std::size_t dim() const { return phi_diag.size(); }
    Matrix to_matrix() const;
};

// Ratio recurrences behind the banded inverse: q_i = z_i / z_{i-1} are the
// elimination pivots, p_i the corrected denominators with p_K = q_K; z holds
// the raw leading principal minors (z_0 = 1).
struct RecurrenceState {
    std::vector<cplx> z;  // length K+1
    std::vector<cplx> q;  // length K
    std::vector<cplx> p;  // length K
};

// Execution stats for the folded variant: one index advance takes two clock
// phases so the elimination hardware can be reused.
struct Alg2Stats {
    std::size_t clocks = 0;
};

namespace tridiag {

TridiagonalHermitian extract_tridiagonal(const HermitianMatrix& w);

// Full K x K inverse from the forward/backward ratio recurrences; columns are
// filled downward from the diagonal, the upper triangle by conjugation.
HermitianMatrix exact_inverse(const TridiagonalHermitian& t);

// Forward elimination producing the tridiagonal band of the approximate
// inverse; the backward recurrence is collapsed to a single division by the
// next main-diagonal entry.
BandedInverse banded_inverse_alg1(const TridiagonalHermitian& t);

// Folded reordering of banded_inverse_alg1: identical arithmetic, two clock
// phases per index. Output must match banded_inverse_alg1 exactly.
BandedInverse banded_inverse_alg2(const TridiagonalHermitian& t, Alg2Stats* stats = nullptr);

RecurrenceState qp_recurrence(const TridiagonalHermitian& t);

// Mean magnitude of the off-diagonal attenuation entries (-a_i z_{i-1} / z_i)
// over all indices (the leading entry is zero since a_1 = 0) and over the
// given ensemble of matrices.
double p_attenuation_statistic(std::span<const TridiagonalHermitian> ensemble);

}  // namespace tridiag
}  // namespace mimo
