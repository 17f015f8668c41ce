#include "weylpath/grid.hpp"

#include <cmath>

#include "weylpath/error.hpp"
#include "weylpath/spectral.hpp"

namespace weylpath {

PhaseGrid::PhaseGrid(int half_width) : K_(half_width) {
    if (half_width < 1) {
        throw DomainError("grid half-width K must be >= 1");
    }
    eps_ = std::sqrt(2.0 * kPi / static_cast<double>(dim()));
}

std::vector<double> PhaseGrid::points() const {
    std::vector<double> out(dim());
    for (int l = -K_; l <= K_; ++l) {
        out[l + K_] = value(l);
    }
    return out;
}

PhaseGrid make_grid(int half_width) { return PhaseGrid(half_width); }

namespace {

// e^{-i eps^2 m n} = e^{-2 pi i m n / M}, reduced mod M for accuracy.
cplx symmetric_phase(long long m, long long n, int M) {
    long long r = (m * n) % M;
    if (r < 0) {
        r += M;
    }
    const double angle = -2.0 * kPi * static_cast<double>(r) / static_cast<double>(M);
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

cplx mixed_overlap(const PhaseGrid& grid, int m, int n) {
    const int K = grid.half_width();
    if (m < -K || m > K || n < -K || n > K) {
        throw DomainError("mixed_overlap: index outside [-K, K]");
    }
    return symmetric_phase(m, n, grid.dim()) / std::sqrt(2.0 * kPi);
}

CMatrix momentum_transform(const PhaseGrid& grid) {
    const int M = grid.dim();
    const int K = grid.half_width();
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    CMatrix g(M, M);
    for (int m = -K; m <= K; ++m) {
        for (int n = -K; n <= K; ++n) {
            g(m + K, n + K) = scale * symmetric_phase(m, n, M);
        }
    }
    return g;
}

CVector to_momentum(const PhaseGrid& grid, const CVector& coordinate) {
    // <p_m|psi> = sum_n e^{-i p_m x_n} psi_n / sqrt(M): the forward symmetric DFT.
    return SymmetricDft::cached(grid.basis()).forward(coordinate);
}

CVector to_coordinate(const PhaseGrid& grid, const CVector& momentum) {
    return SymmetricDft::cached(grid.basis()).backward(momentum);
}

StateVector grid_state(const PhaseGrid& grid, CVector orthonormal) {
    return StateVector(grid.basis(), std::move(orthonormal), grid.spacing());
}

} // namespace weylpath
