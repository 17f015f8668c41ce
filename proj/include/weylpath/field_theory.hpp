#pragma once

#include <vector>

#include "weylpath/grid.hpp"
#include "weylpath/kernels.hpp"
#include "weylpath/propagator.hpp"
#include "weylpath/types.hpp"
#include "weylpath/wavelet.hpp"

namespace weylpath {

struct ModePacket {
    double meanPhi = 0.5;
    double deltaPhi = 0.5;
};

/// Truncated F-mode phi^4 model
/// H = 1/2 sum Pi^2 + (m^2/2) sum Phi^2 + sum D_mn Phi_m Phi_n
///     + lambda sum Gamma_klmn Phi_k Phi_l Phi_m Phi_n.
struct FieldConfig {
    int F = 2;
    int K = 20;
    double massSq = 1.0;
    double lambda = 1.0;
    RMatrix D;                 ///< F x F
    std::vector<double> Gamma; ///< F^4, row-major
    int trotterN = 20;
    double totalTime = 0.5;
    std::vector<ModePacket> initial;

    int dim() const { return 2 * K + 1; }
    double dt() const { return totalTime / trotterN; }
};

/// Two adjacent translates with wavelet tables at 256 points per unit,
/// M = 41, N = 20, t = 0.5, means and widths 0.5.
FieldConfig two_mode_demo();

/// Throws DomainError on inconsistent shapes or asymmetric tables and
/// GuardViolation when M^F > 10^7.
void validate(const FieldConfig& config);
inline constexpr long long kFieldGridLimit = 10'000'000;

/// Amplitudes over M^F mode tuples, row-major with mode 0 slowest:
/// index = sum_f pos(n_f) M^{F-1-f}. Orthonormal convention.
struct FieldState {
    PhaseGrid grid;
    int modes = 0;
    CVector amplitudes;

    double norm() const { return amplitudes.norm(); }
};

/// H_F(phi) at every grid tuple, same layout as FieldState.
std::vector<double> potential_samples(const FieldConfig& config);

/// Unit-norm real product of Gaussians e^{-(phi - mean)^2/(4 delta^2)}.
FieldState initial_field_packet(const FieldConfig& config);

/// F-fold tensor product of 1D free kernels with K(pi) = pi^2/2. Stored as
/// the 1D factor only; materialize() builds the M^F x M^F matrix for tests.
struct FieldKernel {
    StepKernel axis;
    int modes = 0;

    CMatrix materialize() const;
    void apply(kernels::Exec exec, CVector& amplitudes) const;
};

inline constexpr int kMaterializeLimit = 4096;

FieldKernel free_field_kernel(const FieldConfig& config);

/// N steps of: diagonal e^{-i H_F dt}, then the free kernel along each axis.
/// trotterN == 0 returns the state unchanged.
FieldState evolve_fields(const FieldConfig& config, const FieldState& state,
                         kernels::Exec exec = kernels::Exec::Parallel);

/// Dense H = sum_f (1 (x) ... T ... (x) 1) + diag(H_F), where T is the
/// Hermitian generator of the 1D free kernel. For oracle checks.
CMatrix dense_field_hamiltonian(const FieldConfig& config);

/// Amplitudes along mode 0 with every other mode at label 0.
CVector slice_at_origin(const FieldState& state);
/// sum over the other modes of |psi|^2, per label of `mode`.
std::vector<double> mode_marginal(const FieldState& state, int mode);
/// <phi_mode> from the marginal.
double mode_mean(const FieldState& state, int mode);

} // namespace weylpath
