#include "mimo/detectors.hpp"

#include <cmath>

namespace mimo {

DetectorSpec DetectorSpec::parse(const std::string& tag) {
    DetectorSpec spec;
    if (tag == "exact" || tag == "mmse" || tag == "cd") {
        spec.method = Method::ExactMmse;
        return spec;
    }
    const auto colon = tag.find(':');
    if (colon == std::string::npos) throw UnknownMethod(tag);
    const std::string head = tag.substr(0, colon);
    const std::string rest = tag.substr(colon + 1);
    const auto parse_l = [&](const std::string& s) {
        int l = 0;
        try {
            l = std::stoi(s);
        } catch (const std::exception&) {
            throw UnknownMethod(tag);
        }
        if (l < 1) throw UnknownMethod(tag);
        return l;
    };
    if (head == "dns") {
        spec.method = Method::Dns;
        spec.l = parse_l(rest);
    } else if (head == "tns") {
        spec.method = Method::Tns;
        spec.l = parse_l(rest);
    } else if (head == "tma") {
        spec.method = Method::Tma;
        spec.l = parse_l(rest);
    } else if (head == "inse") {
        spec.method = Method::ImprovedNse;
        const auto colon2 = rest.find(':');
        if (colon2 == std::string::npos) throw UnknownMethod(tag);
        const std::string base = rest.substr(0, colon2);
        if (base == "dia") {
            spec.base = InitializerKind::Diagonal;
        } else if (base == "tns") {
            spec.base = InitializerKind::TridiagonalExact;
        } else if (base == "tma") {
            spec.base = InitializerKind::TridiagonalBanded;
        } else {
            throw UnknownMethod(tag);
        }
        spec.l = parse_l(rest.substr(colon2 + 1));
    } else {
        throw UnknownMethod(tag);
    }
    return spec;
}

std::string DetectorSpec::label() const {
    switch (method) {
        case Method::ExactMmse:
            return "exact";
        case Method::Dns:
            return "dns:" + std::to_string(l);
        case Method::Tns:
            return "tns:" + std::to_string(l);
        case Method::Tma:
            return "tma:" + std::to_string(l);
        case Method::ImprovedNse: {
            const char* base_tag = base == InitializerKind::Diagonal          ? "dia"
                                   : base == InitializerKind::TridiagonalExact ? "tns"
                                                                               : "tma";
            return std::string("inse:") + base_tag + ":" + std::to_string(l);
        }
    }
    return "?";
}

namespace detect {

Matrix banded_apply(const BandedInverse& binv, const Matrix& m) {
    const std::size_t k = binv.dim();
    if (m.rows() != k) throw DimensionMismatch();
    const std::size_t cols = m.cols();
    Matrix out(k, cols);
    for (std::size_t i = 0; i < k; ++i) {
        cplx* oi = &out(i, 0);
        const cplx d = binv.phi_diag[i];
        const cplx* mi = &m(i, 0);
        for (std::size_t j = 0; j < cols; ++j) oi[j] = d * mi[j];
        if (i > 0) {
            const cplx lo = binv.phi_sub[i - 1];
            const cplx* mprev = &m(i - 1, 0);
            for (std::size_t j = 0; j < cols; ++j) oi[j] += lo * mprev[j];
        }
        if (i + 1 < k) {
            const cplx hi = std::conj(binv.phi_sub[i]);
            const cplx* mnext = &m(i + 1, 0);
            for (std::size_t j = 0; j < cols; ++j) oi[j] += hi * mnext[j];
        }
    }
    return out;
}

NseState build_initializer(const HermitianMatrix& w, InitializerKind kind) {
    const std::size_t k = w.dim();
    NseState st;
    st.kind = kind;
    const Matrix w_dense = w.to_matrix();

    if (kind == InitializerKind::Diagonal) {
        st.band.phi_diag.resize(k);
        st.band.phi_sub.assign(k > 0 ? k - 1 : 0, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < k; ++i) {
            const double d = w(i, i).real();
            if (std::abs(d) < 1e-300) throw DegenerateDivision(i);
            st.band.phi_diag[i] = 1.0 / d;
        }
        st.x_inv = st.band.to_matrix();
        st.theta = banded_apply(st.band, w_dense);
    } else if (kind == InitializerKind::TridiagonalBanded) {
        st.band = tridiag::banded_inverse_alg1(tridiag::extract_tridiagonal(w));
        st.x_inv = st.band.to_matrix();
        st.theta = banded_apply(st.band, w_dense);
    } else {
        const HermitianMatrix inv = tridiag::exact_inverse(tridiag::extract_tridiagonal(w));
        st.x_inv = inv.to_matrix();
        st.theta = linalg::multiply(st.x_inv, w_dense);
    }

    // Theta = I - X^{-1} W
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            st.theta(i, j) = (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) - st.theta(i, j);
    st.theta_fro = linalg::frobenius_norm(st.theta);

    st.w_inv = st.x_inv;
    st.l = 1;
    return st;
}

const Matrix& nse_iterate(NseState& state, int l_target) {
    if (l_target < 1) throw ConfigInvalid("iteration count must be >= 1");
    if (l_target < state.l) {
        state.w_inv = state.x_inv;
        state.l = 1;
    }
    const std::size_t k = state.x_inv.rows();
    while (state.l < l_target) {
        Matrix next = linalg::multiply(state.theta, state.w_inv);
        for (std::size_t i = 0; i < k * k; ++i) next.data()[i] += state.x_inv.data()[i];
        state.w_inv = std::move(next);
        ++state.l;
    }
    return state.w_inv;
}

Matrix improved_nse(const Matrix& x_inv, const Matrix& theta, int l) {
    if (l < 1) throw ConfigInvalid("iteration count must be >= 1");
    Matrix sum = x_inv;
    if (l == 1) return sum;
    Matrix power = theta;  // Theta^{2^{t-2}} at step t
    const std::size_t sz = x_inv.rows() * x_inv.cols();
    for (int t = 2; t <= l; ++t) {
        Matrix next = linalg::multiply(power, sum);
        for (std::size_t i = 0; i < sz; ++i) next.data()[i] += sum.data()[i];
        sum = std::move(next);
        if (t < l) power = linalg::multiply(power, power);
    }
    return sum;
}

Matrix improved_nse(const Matrix& x_inv, const HermitianMatrix& w, int l) {
    const std::size_t k = w.dim();
    Matrix theta = linalg::multiply(x_inv, w.to_matrix());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            theta(i, j) = (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) - theta(i, j);
    return improved_nse(x_inv, theta, l);
}

std::vector<cplx> estimate_symbols(const Matrix& w_inv, std::span<const cplx> y_hat) {
    return linalg::multiply(w_inv, y_hat);
}

DetectResult run(const DetectorSpec& spec, const ChannelRealization& real,
                 std::span<const cplx> y) {
    const std::vector<cplx> y_hat = channel::matched_filter(real, y);
    DetectResult res;
    switch (spec.method) {
        case DetectorSpec::Method::ExactMmse:
            res.s_hat = linalg::cholesky_solve(real.w, y_hat);
            return res;
        case DetectorSpec::Method::Dns:
        case DetectorSpec::Method::Tns:
        case DetectorSpec::Method::Tma: {
            const InitializerKind kind = spec.method == DetectorSpec::Method::Dns
                                             ? InitializerKind::Diagonal
                                         : spec.method == DetectorSpec::Method::Tns
                                             ? InitializerKind::TridiagonalExact
                                             : InitializerKind::TridiagonalBanded;
            NseState st = build_initializer(real.w, kind);
            const Matrix& w_inv = nse_iterate(st, spec.l);
            res.s_hat = estimate_symbols(w_inv, y_hat);
            res.diverged = st.diverged();
            return res;
        }
        case DetectorSpec::Method::ImprovedNse: {
            NseState st = build_initializer(real.w, spec.base);
            const Matrix w_inv = improved_nse(st.x_inv, st.theta, spec.l);
            res.s_hat = estimate_symbols(w_inv, y_hat);
            res.diverged = st.diverged();
            return res;
        }
    }
    throw UnknownMethod("detector method");
}

}  // namespace detect
}  // namespace mimo
