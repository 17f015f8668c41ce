#include "weylpath/propagator.hpp"

#include <cmath>
#include <random>

#include "weylpath/error.hpp"
#include "weylpath/spectral.hpp"
#include "weylpath/weyl.hpp"

namespace weylpath {

namespace {

void require_length(std::span<const double> samples, int M, const char* what) {
    if (static_cast<int>(samples.size()) != M) {
        throw DomainError(std::string(what) + ": expected " + std::to_string(M) + " samples, got " +
                          std::to_string(samples.size()));
    }
}

cplx phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

} // namespace

MixedHamiltonian mixed_symbol(const WeylBasis& basis, const CMatrix& hamiltonian) {
    const int M = basis.dim();
    if (hamiltonian.rows() != M || hamiltonian.cols() != M) {
        throw DomainError("mixed_symbol: dimension mismatch");
    }
    const CMatrix f = fourier_matrix(basis);
    const CMatrix projected = f.adjoint() * hamiltonian; // <u_n|H|k>
    CMatrix symbol(M, M);
    for (int n = 0; n < M; ++n) {
        for (int k = 0; k < M; ++k) {
            symbol(n, k) = projected(n, k) / std::conj(f(k, n));
        }
    }
    return {basis, std::move(symbol)};
}

CMatrix operator_from_symbol(const MixedHamiltonian& mixed) {
    const CMatrix f = fourier_matrix(mixed.basis);
    CMatrix weighted = f.adjoint();
    weighted.array() *= mixed.samples.array();
    return f * weighted;
}

MixedHamiltonian split_symbol(const WeylBasis& basis, std::span<const double> kinetic,
                              std::span<const double> potential) {
    const int M = basis.dim();
    require_length(kinetic, M, "split_symbol kinetic");
    require_length(potential, M, "split_symbol potential");
    CMatrix s(M, M);
    for (int n = 0; n < M; ++n) {
        for (int k = 0; k < M; ++k) {
            s(n, k) = kinetic[n] + potential[k];
        }
    }
    return {basis, std::move(s)};
}

StepKernel free_step_kernel(const WeylBasis& basis, std::span<const double> kinetic, double dt) {
    const int M = basis.dim();
    require_length(kinetic, M, "free_step_kernel");
    const double reference = kinetic[basis.position(0)];
    CVector phases(M);
    for (int n = 0; n < M; ++n) {
        phases(n) = phase(-(kinetic[n] - reference) * dt);
    }
    const CMatrix f = fourier_matrix(basis);
    CMatrix matrix = f * phases.asDiagonal() * f.adjoint();
    return {basis, std::move(matrix), KernelKind::FreeP_X, dt, std::move(phases), CVector()};
}

StepKernel full_step_kernel(const StepKernel& free, std::span<const double> potential, double dt) {
    if (free.kind != KernelKind::FreeP_X) {
        throw DomainError("full_step_kernel: expected a free kernel");
    }
    const int M = free.basis.dim();
    require_length(potential, M, "full_step_kernel");
    CVector phases(M);
    for (int k = 0; k < M; ++k) {
        phases(k) = phase(-potential[k] * dt);
    }
    CMatrix matrix = free.matrix * phases.asDiagonal();
    return {free.basis, std::move(matrix), KernelKind::FullX, dt, free.momentum_phases, std::move(phases)};
}

StepKernel mixed_step_kernel(const WeylBasis& basis, const MixedHamiltonian& mixed, double dt) {
    const int M = basis.dim();
    if (mixed.samples.rows() != M || mixed.samples.cols() != M) {
        throw DomainError("mixed_step_kernel: symbol must be M x M");
    }
    const CMatrix f = fourier_matrix(basis);
    CMatrix weighted = f.adjoint();
    for (int n = 0; n < M; ++n) {
        for (int k = 0; k < M; ++k) {
            weighted(n, k) *= std::exp(-kI * mixed.samples(n, k) * dt);
        }
    }
    return {basis, f * weighted, KernelKind::MixedStep, dt, CVector(), CVector()};
}

double unitarity_defect(const StepKernel& kernel) {
    const int M = kernel.basis.dim();
    return max_abs(kernel.matrix.adjoint() * kernel.matrix - CMatrix::Identity(M, M));
}

double column_sum_defect(const StepKernel& kernel) {
    const CVector sums = kernel.matrix.colwise().sum().transpose();
    return max_abs((sums.array() - cplx(1.0)).matrix());
}

StateVector evolve(const StepKernel& kernel, const StateVector& psi, int steps, EvolveOptions options) {
    if (steps < 0) {
        throw DomainError("evolve: steps must be >= 0");
    }
    if (psi.size() != kernel.basis.dim()) {
        throw DomainError("evolve: state and kernel dimensions differ");
    }
    StateVector out = psi;
    if (steps == 0) {
        return out;
    }
    CVector& current = out.orthonormal();

    if (options.path == ApplyPath::Dense) {
        CVector next(current.size());
        for (int s = 0; s < steps; ++s) {
            kernels::matvec(options.exec, kernel.matrix, {current.data(), static_cast<std::size_t>(current.size())},
                            {next.data(), static_cast<std::size_t>(next.size())});
            current.swap(next);
        }
        return out;
    }

    if (kernel.kind == KernelKind::MixedStep) {
        throw DomainError("evolve: spectral path needs a free or full kernel");
    }
    const SymmetricDft& dft = SymmetricDft::cached(kernel.basis);
    const std::size_t M = static_cast<std::size_t>(current.size());
    const std::span<const cplx> mom(kernel.momentum_phases.data(), M);
    const bool has_potential = kernel.coordinate_phases.size() > 0;
    for (int s = 0; s < steps; ++s) {
        std::span<cplx> data(current.data(), M);
        if (has_potential) {
            kernels::scale(options.exec, {kernel.coordinate_phases.data(), M}, data);
        }
        dft.backward_inplace(current.data()); // <u_n|psi>
        kernels::scale(options.exec, mom, data);
        dft.forward_inplace(current.data()); // sum_n <k|u_n> (...)
    }
    return out;
}

cplx conditional_probability(const WeylBasis& basis, int k_next, int n, int k) {
    if (!basis.contains(k_next) || !basis.contains(n) || !basis.contains(k)) {
        throw DomainError("conditional_probability: index outside basis range");
    }
    const int M = basis.dim();
    long long r = (static_cast<long long>(n) * (k_next - k)) % M;
    if (r < 0) {
        r += M;
    }
    return phase(-2.0 * kPi * static_cast<double>(r) / M) / static_cast<double>(M);
}

PathEnsembleResult brute_force_amplitude(const WeylBasis& basis, const MixedHamiltonian& mixed, double dt, int steps,
                                         int k_initial, int k_final, bool functional_on, kernels::Exec exec) {
    const int M = basis.dim();
    if (steps < 1) {
        throw DomainError("brute_force_amplitude: need at least one step");
    }
    if (mixed.samples.rows() != M || mixed.samples.cols() != M) {
        throw DomainError("brute_force_amplitude: symbol must be M x M");
    }
    const int ki = basis.position(k_initial);
    const int kf = basis.position(k_final);
    const int digits = 2 * steps;
    std::int64_t total = 1;
    for (int d = 0; d < digits; ++d) {
        total *= M;
        if (total > kEnumerationLimit) {
            throw GuardViolation("brute_force_amplitude: M^(2N) exceeds enumeration limit of " +
                                 std::to_string(kEnumerationLimit));
        }
    }

    // cond[(k_next * M + n) * M + k] and weight[n * M + k], by position.
    std::vector<cplx> cond(static_cast<std::size_t>(M) * M * M);
    for (int a = 0; a < M; ++a) {
        for (int n = 0; n < M; ++n) {
            for (int k = 0; k < M; ++k) {
                cond[(static_cast<std::size_t>(a) * M + n) * M + k] =
                    conditional_probability(basis, basis.label(a), basis.label(n), basis.label(k));
            }
        }
    }
    std::vector<cplx> weight(static_cast<std::size_t>(M) * M);
    for (int n = 0; n < M; ++n) {
        for (int k = 0; k < M; ++k) {
            weight[static_cast<std::size_t>(n) * M + k] =
                functional_on ? std::exp(-kI * mixed.samples(n, k) * dt) : cplx(1.0);
        }
    }

    // Paths are partitioned by k_1 (the first digit); each partition is
    // summed in a fixed order and partitions are merged pairwise.
    const std::int64_t per_chunk = total / M;
    std::vector<cplx> chunk_norm(M), chunk_amp(M);

    auto run_chunk = [&](int k1) {
        // digit layout: d[2i] = k_{i+1}, d[2i+1] = n_{i+1}, i = 0..N-1; d[0] fixed to k1.
        std::vector<int> d(digits, 0);
        d[0] = k1;
        cplx norm_acc = 0.0, amp_acc = 0.0;
        for (std::int64_t idx = 0; idx < per_chunk; ++idx) {
            std::int64_t rest = idx;
            for (int pos = 1; pos < digits; ++pos) {
                d[pos] = static_cast<int>(rest % M);
                rest /= M;
            }
            cplx p = 1.0;
            cplx w = 1.0;
            for (int i = 0; i < steps; ++i) {
                const int k = d[2 * i];
                const int n = d[2 * i + 1];
                const int k_next = (i + 1 < steps) ? d[2 * (i + 1)] : kf;
                p *= cond[(static_cast<std::size_t>(k_next) * M + n) * M + k];
                w *= weight[static_cast<std::size_t>(n) * M + k];
            }
            norm_acc += p;
            if (k1 == ki) {
                amp_acc += p * w;
            }
        }
        chunk_norm[k1] = norm_acc;
        chunk_amp[k1] = amp_acc;
    };

    if (exec == kernels::Exec::Serial) {
        for (int k1 = 0; k1 < M; ++k1) {
            run_chunk(k1);
        }
    } else {
#pragma omp parallel for schedule(dynamic)
        for (int k1 = 0; k1 < M; ++k1) {
            run_chunk(k1);
        }
    }

    PathEnsembleResult result;
    result.pathCount = total;
    result.normalizationSum = kernels::pairwise_sum(std::span<const cplx>(chunk_norm));
    result.amplitude = kernels::pairwise_sum(std::span<const cplx>(chunk_amp));
    return result;
}

CMatrix random_hermitian(int dim, std::uint64_t seed, double scale) {
    if (dim < 1) {
        throw DomainError("random_hermitian: dim must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix h(dim, dim);
    for (int r = 0; r < dim; ++r) {
        h(r, r) = scale * u(rng);
        for (int c = r + 1; c < dim; ++c) {
            const double re = u(rng);
            const double im = u(rng);
            h(r, c) = scale * cplx{re, im};
            h(c, r) = std::conj(h(r, c));
        }
    }
    return h;
}

} // namespace weylpath
