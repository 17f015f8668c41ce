#pragma once

#include <vector>

#include "weylpath/basis.hpp"
#include "weylpath/state.hpp"
#include "weylpath/types.hpp"

namespace weylpath {

/// Symmetric phase-space grid: M = 2K+1, eps^2 = 2 pi / M, x_l = p_l = l eps
/// for -K <= l <= K.
class PhaseGrid {
  public:
    explicit PhaseGrid(int half_width);

    int half_width() const { return K_; }
    int dim() const { return 2 * K_ + 1; }
    double spacing() const { return eps_; }
    /// K eps = sqrt(M pi/2) - sqrt(pi/(2M)).
    double extent() const { return K_ * eps_; }
    WeylBasis basis() const { return WeylBasis::symmetric(K_); }

    double value(int label) const { return label * eps_; }
    /// Sample points in storage order (label -K first).
    std::vector<double> points() const;

  private:
    int K_;
    double eps_;
};

PhaseGrid make_grid(int half_width);

/// <p_m|x_n> = e^{-i p_m x_n}/sqrt(2 pi) (delta-normalized states).
cplx mixed_overlap(const PhaseGrid& grid, int m, int n);

/// Unitary map from orthonormal coordinate amplitudes to orthonormal
/// physical-momentum amplitudes: G(m, n) = eps <p_m|x_n> = e^{-i p_m x_n}/sqrt(M).
CMatrix momentum_transform(const PhaseGrid& grid);

/// Physical-momentum amplitudes of a coordinate-basis state (orthonormal).
CVector to_momentum(const PhaseGrid& grid, const CVector& coordinate);
/// Inverse of to_momentum.
CVector to_coordinate(const PhaseGrid& grid, const CVector& momentum);

/// Orthonormal state on the grid with weight eps.
StateVector grid_state(const PhaseGrid& grid, CVector orthonormal);

} // namespace weylpath
