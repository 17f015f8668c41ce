#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "weylpath/basis.hpp"
#include "weylpath/kernels.hpp"
#include "weylpath/state.hpp"
#include "weylpath/types.hpp"

namespace weylpath {

// Momentum labels in this module follow the Weyl convention: label n is the
// U-eigenvector |u_n> with <k|u_n> = e^{-2 pi i nk/M}/sqrt(M). Coordinate
// labels k are X-eigenvectors, where states live and potentials are diagonal.

/// H~(p_n, x_k): the Hamiltonian symbol in the mixed (momentum, coordinate)
/// basis, <u_n|H|k> = <u_n|k> H~_{nk}. samples(row = position of n,
/// col = position of k).
struct MixedHamiltonian {
    WeylBasis basis;
    CMatrix samples;
};

/// Symbol of a dense operator (coordinate basis): H~_{nk} = <u_n|H|k>/<u_n|k>.
MixedHamiltonian mixed_symbol(const WeylBasis& basis, const CMatrix& hamiltonian);
/// Operator with the given symbol: <k'|H|k> = sum_n <k'|u_n><u_n|k> H~_{nk}.
CMatrix operator_from_symbol(const MixedHamiltonian& mixed);
/// H~(p_n, x_k) = K(p_n) + V(x_k).
MixedHamiltonian split_symbol(const WeylBasis& basis, std::span<const double> kinetic,
                              std::span<const double> potential);

enum class KernelKind { FreeP_X, FullX, MixedStep };

/// One-step kernel. Free and full kernels also keep their factored form
/// (momentum phases, coordinate phases) so they can be applied spectrally
/// in O(M log M).
struct StepKernel {
    WeylBasis basis;
    CMatrix matrix;
    KernelKind kind;
    double dt;
    /// e^{-i (K(p_n) - K(p_0)) dt} by u-label position (free and full kernels).
    CVector momentum_phases;
    /// e^{-i V(x_k) dt} by coordinate position (full kernels only).
    CVector coordinate_phases;
};

/// P_X(k'; k) = sum_n <k'|u_n> e^{-i (K(p_n) - K(p_0)) dt} <u_n|k>. kinetic is
/// indexed by u-label position; p_0 is label 0.
StepKernel free_step_kernel(const WeylBasis& basis, std::span<const double> kinetic, double dt);

/// X = P_X diag(e^{-i V(x_j) dt}).
StepKernel full_step_kernel(const StepKernel& free, std::span<const double> potential, double dt);

/// T_{k'k} = sum_n <k'|u_n><u_n|k> e^{-i H~(p_n, x_k) dt}. Not unitary in
/// general; see unitarity_defect.
StepKernel mixed_step_kernel(const WeylBasis& basis, const MixedHamiltonian& mixed, double dt);

/// max |K^dagger K - I|.
double unitarity_defect(const StepKernel& kernel);
/// max_k |sum_{k'} K_{k'k} - 1|.
double column_sum_defect(const StepKernel& kernel);

enum class ApplyPath {
    Dense,    ///< dense matrix-vector product (reference)
    Spectral, ///< DFT . phases . inverse DFT (free/full kernels only)
};

struct EvolveOptions {
    kernels::Exec exec = kernels::Exec::Parallel;
    ApplyPath path = ApplyPath::Dense;
};

/// Applies the kernel `steps` times. steps == 0 returns psi unchanged.
StateVector evolve(const StepKernel& kernel, const StateVector& psi, int steps, EvolveOptions options = {});

/// P(k_next; n, k) = <k_next|u_n><u_n|k> = e^{-2 pi i n (k_next - k)/M}/M.
cplx conditional_probability(const WeylBasis& basis, int k_next, int n, int k);

struct PathEnsembleResult {
    cplx amplitude;
    std::int64_t pathCount = 0;
    cplx normalizationSum;
};

inline constexpr std::int64_t kEnumerationLimit = 10'000'000;

/// Enumerates every phase-space path (n_N, k_N, ..., n_1, k_1), M^{2N} of
/// them. normalizationSum = sum of P_N over all paths (should be 1).
/// amplitude = sum of P_N * delta_{k_1, k_i} times, when functional_on, the
/// weight e^{-i sum_m H~(p_{n_m}, x_{k_m}) dt}. k_i and k_f are labels.
/// Throws GuardViolation when M^{2N} exceeds kEnumerationLimit.
PathEnsembleResult brute_force_amplitude(const WeylBasis& basis, const MixedHamiltonian& mixed, double dt, int steps,
                                         int k_initial, int k_final, bool functional_on,
                                         kernels::Exec exec = kernels::Exec::Parallel);

/// Hermitian matrix with entries uniform in [-scale, scale] (real and
/// imaginary parts), reproducible from the seed.
CMatrix random_hermitian(int dim, std::uint64_t seed, double scale = 1.0);

} // namespace weylpath
