#pragma once

#include <vector>

#include "weylpath/grid.hpp"
#include "weylpath/propagator.hpp"
#include "weylpath/weyl.hpp"

namespace weylpath {

/// Minimal-uncertainty packet: mean momentum, momentum width, mass and the
/// free backward shift tau applied as e^{+i p^2 tau / 2m}.
struct PacketSpec {
    double meanP = 2.5;
    double deltaP = 0.25;
    double mass = 1.0;
    double tau = 0.0;
};

struct ScatterConfig {
    int K = 300;
    int trotterN = 100;
    double lambda = 0.5;
    double alpha = 2.0;
    PacketSpec packet{2.5, 0.25, 1.0, 7.0};
};

/// Throws DomainError on invalid parameters and GuardViolation when
/// <p> tau/m + 4 dx exceeds the grid extent K eps (dx = 1/(2 dp)), i.e. the
/// packet would wrap around the periodic grid.
void validate(const ScatterConfig& config);

/// Coordinate-basis packet built from momentum samples
/// C exp(-(eps n - <p>)^2/(4 dp^2) + i n^2 eps^2 tau/(2m)) by the symmetric
/// DFT. Unit norm.
StateVector gaussian_packet(const PhaseGrid& grid, const PacketSpec& spec);

struct PacketStats {
    double meanX = 0.0;
    double meanP = 0.0;
    double deltaX = 0.0;
    double deltaP = 0.0;
};

/// Moments in the coordinate and (physical) momentum bases. Throws
/// DomainError on a zero state.
PacketStats packet_stats(const PhaseGrid& grid, const StateVector& psi);

/// Probability within `sites` grid points of either coordinate edge.
double edge_probability(const StateVector& psi, int sites = 5);
inline constexpr double kEdgeWarningThreshold = 1e-6;

/// V(x_l) = lambda e^{-alpha x_l^2}.
std::vector<double> gaussian_potential(const PhaseGrid& grid, double lambda, double alpha);

/// K(p) = p^2/(2m) over the grid's momentum labels.
std::vector<double> kinetic_samples(const PhaseGrid& grid, double mass);

struct ScatteringRun {
    PhaseGrid grid;
    StateVector initial;   ///< psi_0(-tau), free packet shifted back
    StateVector collision; ///< psi(0) = X^N psi_0(-tau)
    double normDrift = 0.0;
    double edgeProbability = 0.0;
    bool leakWarning = false;
};

ScatteringRun scattering_state(const ScatterConfig& config,
                               EvolveOptions options = {kernels::Exec::Parallel, ApplyPath::Spectral});

/// Half-shell transition matrix elements <p|T(E_i)|p_i> ~ <p|V|psi(0)> with
/// the delta-normalized packet prefactor 1/(2 sqrt(pi) dp), plus the Born
/// column <p|V|psi_0(0)>.
struct HalfShellResult {
    std::vector<double> pGrid;
    std::vector<double> tReal, tImag;
    std::vector<double> bornReal, bornImag;
    double onShellMomentum = 0.0;
    cplx onShellT;
    cplx onShellBorn;
    /// p = -<p>: the backward (reflected) on-shell element.
    cplx backwardT;
    cplx backwardBorn;
    PacketStats initialStats;
    double normDrift = 0.0;
    bool leakWarning = false;
};

HalfShellResult half_shell_T(const ScatterConfig& config,
                             EvolveOptions options = {kernels::Exec::Parallel, ApplyPath::Spectral});

/// sum_k e^{-i p x_k} f_k / sqrt(M) at an arbitrary momentum p.
cplx momentum_component(const PhaseGrid& grid, const CVector& coordinate, double p);

/// Solution of the 1D momentum-space Lippmann-Schwinger equation
/// T = V + V G0(E + i0) T for V(x) = lambda e^{-alpha x^2}, with
/// <p|V|q> = lambda/(2 pi) sqrt(pi/alpha) e^{-(p-q)^2/(4 alpha)}.
struct LsResult {
    std::vector<double> momenta; ///< quadrature nodes (+-q_j) followed by +p0, -p0
    std::vector<cplx> halfShell; ///< T(p, p0; E0) at those momenta
    cplx onShell;                ///< T(p0, p0)
    cplx backward;               ///< T(-p0, p0)
    double convergenceDelta = 0.0; ///< relative on-shell change n -> 2n nodes
};

inline constexpr double kLsConvergenceTolerance = 1e-3;

/// Throws DomainError for p0 <= 0 or fewer than 64 nodes, NumericalError if
/// the linear solve fails or doubling the nodes changes the on-shell value
/// by more than 0.1%.
LsResult ls_oracle(double lambda, double alpha, double mass, double p0, int quadrature_points);

/// <p|V|q> for the Gaussian potential.
double gaussian_potential_momentum(double lambda, double alpha, double p, double q);

/// S(tau) = Y^{-N} X^{2N} Y^{-N} as a dense matrix in the coordinate basis.
/// Y^{-N} is the free kernel at time step -tau, which equals (Y(dt))^{-N}
/// exactly since the free phases compose.
/// Throws GuardViolation for K > 400.
DenseOperator s_operator(const ScatterConfig& config);
inline constexpr int kSOperatorMaxK = 400;

} // namespace weylpath
