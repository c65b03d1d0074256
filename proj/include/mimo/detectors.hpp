#pragma once

#include <string>

#include "mimo/channel.hpp"
#include "mimo/linalg.hpp"
#include "mimo/tridiag.hpp"

namespace mimo {

enum class InitializerKind { Diagonal, TridiagonalExact, TridiagonalBanded };

// Iteration state of the series inverse around an initializer X:
//   W^{-1}(1) = X^{-1},  W^{-1}(L+1) = Theta W^{-1}(L) + X^{-1},
// with Theta = I - X^{-1} W. The banded form of X^{-1} is kept so Theta can
// be assembled with the O(K^2) band-aware product where the kind allows it.
struct NseState {
    InitializerKind kind = InitializerKind::Diagonal;
    Matrix x_inv;        // dense form of the initializer inverse
    BandedInverse band;  // populated for Diagonal and TridiagonalBanded
    Matrix theta;
    Matrix w_inv;        // current W^{-1}(L)
    int l = 0;
    double theta_fro = 0.0;

    bool diverged() const { return theta_fro >= 1.0; }
};

struct DetectorSpec {
    enum class Method { ExactMmse, Dns, Tns, Tma, ImprovedNse };

    Method method = Method::ExactMmse;
    int l = 1;
    InitializerKind base = InitializerKind::TridiagonalBanded;  // ImprovedNse only

    // "exact" | "dns:L" | "tns:L" | "tma:L" | "inse:dia|tns|tma:L"
    static DetectorSpec parse(const std::string& tag);
    std::string label() const;
};

struct DetectResult {
    std::vector<cplx> s_hat;
    bool diverged = false;
};

namespace detect {

// Tridiagonal-band times dense: touches 3K-2 band coefficients per column.
Matrix banded_apply(const BandedInverse& binv, const Matrix& m);

NseState build_initializer(const HermitianMatrix& w, InitializerKind kind);

// Advances the state to L_target and returns W^{-1}(L_target).
const Matrix& nse_iterate(NseState& state, int l_target);

// Order-doubling recursion: L steps realize the plain series with 2^{L-1}
// terms by squaring the running Theta power.
Matrix improved_nse(const Matrix& x_inv, const Matrix& theta, int l);
Matrix improved_nse(const Matrix& x_inv, const HermitianMatrix& w, int l);

std::vector<cplx> estimate_symbols(const Matrix& w_inv, std::span<const cplx> y_hat);

DetectResult run(const DetectorSpec& spec, const ChannelRealization& real,
                 std::span<const cplx> y);

}  // namespace detect
}  // namespace mimo
