#include "weylpath/field_theory.hpp"

#include <cmath>

#include "weylpath/error.hpp"
#include "weylpath/weyl.hpp"

namespace weylpath {

namespace {

long long grid_size(int M, int F) {
    long long n = 1;
    for (int f = 0; f < F; ++f) {
        n *= M;
        if (n > kFieldGridLimit) {
            return n;
        }
    }
    return n;
}

std::vector<double> free_kinetic(const PhaseGrid& grid) {
    std::vector<double> k = grid.points();
    for (double& p : k) {
        p = 0.5 * p * p;
    }
    return k;
}

} // namespace

FieldConfig two_mode_demo() {
    const OverlapTables tables = overlap_tables({0, 1}, 256);
    FieldConfig c;
    c.F = 2;
    c.K = 20;
    c.D = tables.D;
    c.Gamma = tables.Gamma;
    c.initial = {ModePacket{0.5, 0.5}, ModePacket{0.5, 0.5}};
    return c;
}

void validate(const FieldConfig& config) {
    const int F = config.F;
    if (F < 1) {
        throw DomainError("fields: F must be >= 1");
    }
    if (config.K < 1) {
        throw DomainError("fields: K must be >= 1");
    }
    if (config.trotterN < 0) {
        throw DomainError("fields: trotterN must be >= 0");
    }
    if (config.D.rows() != F || config.D.cols() != F) {
        throw DomainError("fields: D must be F x F");
    }
    if ((config.D - config.D.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw DomainError("fields: D must be symmetric");
    }
    if (static_cast<long long>(config.Gamma.size()) != static_cast<long long>(F) * F * F * F) {
        throw DomainError("fields: Gamma must have F^4 entries");
    }
    for (int k = 0; k < F; ++k)
        for (int l = 0; l < F; ++l)
            for (int m = 0; m < F; ++m)
                for (int n = 0; n < F; ++n) {
                    const double g = config.Gamma[((k * F + l) * F + m) * F + n];
                    if (g != config.Gamma[((l * F + k) * F + m) * F + n] ||
                        g != config.Gamma[((k * F + m) * F + l) * F + n] ||
                        g != config.Gamma[((k * F + l) * F + n) * F + m]) {
                        throw DomainError("fields: Gamma must be permutation symmetric");
                    }
                }
    if (static_cast<int>(config.initial.size()) != F) {
        throw DomainError("fields: one initial packet per mode required");
    }
    for (const ModePacket& p : config.initial) {
        if (!(p.deltaPhi > 0.0)) {
            throw DomainError("fields: packet widths must be > 0");
        }
    }
    if (grid_size(config.dim(), F) > kFieldGridLimit) {
        throw GuardViolation("fields: M^F exceeds " + std::to_string(kFieldGridLimit) + " grid points");
    }
}

std::vector<double> potential_samples(const FieldConfig& config) {
    validate(config);
    const PhaseGrid grid(config.K);
    const int F = config.F;
    const int M = grid.dim();
    const long long total = grid_size(M, F);
    const std::vector<double> pts = grid.points();
    std::vector<double> out(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        std::vector<double> phi(F);
        long long rest = idx;
        for (int f = F - 1; f >= 0; --f) {
            phi[f] = pts[rest % M];
            rest /= M;
        }
        double mass = 0.0;
        double quad = 0.0;
        double quartic = 0.0;
        for (int a = 0; a < F; ++a) {
            mass += phi[a] * phi[a];
            for (int b = 0; b < F; ++b) {
                quad += config.D(a, b) * phi[a] * phi[b];
            }
        }
        for (int k = 0; k < F; ++k)
            for (int l = 0; l < F; ++l)
                for (int m = 0; m < F; ++m)
                    for (int n = 0; n < F; ++n) {
                        quartic += config.Gamma[((k * F + l) * F + m) * F + n] * phi[k] * phi[l] * phi[m] * phi[n];
                    }
        out[idx] = 0.5 * config.massSq * mass + quad + config.lambda * quartic;
    }
    return out;
}

FieldState initial_field_packet(const FieldConfig& config) {
    validate(config);
    const PhaseGrid grid(config.K);
    const int F = config.F;
    const int M = grid.dim();
    const std::vector<double> pts = grid.points();

    // Normalize each 1D factor, then take the product.
    std::vector<RVector> factors;
    for (int f = 0; f < F; ++f) {
        RVector g(M);
        const ModePacket& p = config.initial[f];
        for (int i = 0; i < M; ++i) {
            const double d = pts[i] - p.meanPhi;
            g(i) = std::exp(-d * d / (4.0 * p.deltaPhi * p.deltaPhi));
        }
        g /= g.norm();
        factors.push_back(std::move(g));
    }
    const long long total = grid_size(M, F);
    CVector amp(total);
    for (long long idx = 0; idx < total; ++idx) {
        double v = 1.0;
        long long rest = idx;
        for (int f = F - 1; f >= 0; --f) {
            v *= factors[f](rest % M);
            rest /= M;
        }
        amp(idx) = v;
    }
    return {grid, F, std::move(amp)};
}

FieldKernel free_field_kernel(const FieldConfig& config) {
    validate(config);
    const PhaseGrid grid(config.K);
    return {free_step_kernel(grid.basis(), free_kinetic(grid), config.trotterN > 0 ? config.dt() : 0.0), config.F};
}

CMatrix FieldKernel::materialize() const {
    const long long total = grid_size(axis.basis.dim(), modes);
    if (total > kMaterializeLimit) {
        throw GuardViolation("FieldKernel::materialize: M^F too large for a dense matrix");
    }
    CMatrix out = CMatrix::Identity(1, 1);
    for (int f = 0; f < modes; ++f) {
        CMatrix next(out.rows() * axis.matrix.rows(), out.cols() * axis.matrix.cols());
        for (int r = 0; r < out.rows(); ++r) {
            for (int c = 0; c < out.cols(); ++c) {
                next.block(r * axis.matrix.rows(), c * axis.matrix.cols(), axis.matrix.rows(), axis.matrix.cols()) =
                    out(r, c) * axis.matrix;
            }
        }
        out = std::move(next);
    }
    return out;
}

void FieldKernel::apply(kernels::Exec exec, CVector& amplitudes) const {
    std::span<cplx> data(amplitudes.data(), static_cast<std::size_t>(amplitudes.size()));
    for (int f = 0; f < modes; ++f) {
        kernels::apply_along_axis(exec, axis.matrix, modes, f, data);
    }
}

FieldState evolve_fields(const FieldConfig& config, const FieldState& state, kernels::Exec exec) {
    validate(config);
    FieldState out = state;
    if (state.modes != config.F || state.grid.half_width() != config.K) {
        throw DomainError("evolve_fields: state does not match the configuration");
    }
    if (config.trotterN == 0) {
        return out;
    }
    const FieldKernel kernel = free_field_kernel(config);
    const std::vector<double> pot = potential_samples(config);
    const double dt = config.dt();
    CVector phases(static_cast<Eigen::Index>(pot.size()));
    for (std::size_t i = 0; i < pot.size(); ++i) {
        phases(i) = cplx{std::cos(pot[i] * dt), -std::sin(pot[i] * dt)};
    }
    const std::span<const cplx> ph(phases.data(), static_cast<std::size_t>(phases.size()));
    std::span<cplx> data(out.amplitudes.data(), static_cast<std::size_t>(out.amplitudes.size()));
    for (int s = 0; s < config.trotterN; ++s) {
        kernels::scale(exec, ph, data);
        kernel.apply(exec, out.amplitudes);
    }
    return out;
}

CMatrix dense_field_hamiltonian(const FieldConfig& config) {
    validate(config);
    const PhaseGrid grid(config.K);
    const int M = grid.dim();
    const long long total = grid_size(M, config.F);
    if (total > kMaterializeLimit) {
        throw GuardViolation("dense_field_hamiltonian: M^F too large for a dense matrix");
    }
    const std::vector<double> kin = free_kinetic(grid);
    const CMatrix f = fourier_matrix(grid.basis());
    const CMatrix t = f * Eigen::Map<const RVector>(kin.data(), M).cast<cplx>().asDiagonal() * f.adjoint();

    CMatrix h = CMatrix::Zero(total, total);
    long long stride = total;
    for (int axis = 0; axis < config.F; ++axis) {
        stride /= M; // extent of the faster axes
        const long long outer = total / (stride * M);
        for (long long o = 0; o < outer; ++o) {
            for (long long in = 0; in < stride; ++in) {
                const long long base = o * stride * M + in;
                for (int r = 0; r < M; ++r) {
                    for (int c = 0; c < M; ++c) {
                        h(base + r * stride, base + c * stride) += t(r, c);
                    }
                }
            }
        }
    }
    const std::vector<double> pot = potential_samples(config);
    for (long long i = 0; i < total; ++i) {
        h(i, i) += pot[i];
    }
    return h;
}

CVector slice_at_origin(const FieldState& state) {
    const int M = state.grid.dim();
    const int K = state.grid.half_width();
    long long stride = 1;
    long long offset = 0;
    for (int f = state.modes - 1; f >= 1; --f) {
        offset += K * stride;
        stride *= M;
    }
    CVector out(M);
    for (int i = 0; i < M; ++i) {
        out(i) = state.amplitudes(offset + i * stride);
    }
    return out;
}

std::vector<double> mode_marginal(const FieldState& state, int mode) {
    if (mode < 0 || mode >= state.modes) {
        throw DomainError("mode_marginal: mode out of range");
    }
    const int M = state.grid.dim();
    long long stride = 1;
    for (int f = state.modes - 1; f > mode; --f) {
        stride *= M;
    }
    std::vector<double> out(M, 0.0);
    for (long long idx = 0; idx < state.amplitudes.size(); ++idx) {
        out[(idx / stride) % M] += std::norm(state.amplitudes(idx));
    }
    return out;
}

double mode_mean(const FieldState& state, int mode) {
    const std::vector<double> m = mode_marginal(state, mode);
    const std::vector<double> pts = state.grid.points();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        num += pts[i] * m[i];
        den += m[i];
    }
    if (den == 0.0) {
        throw DomainError("mode_mean: zero state");
    }
    return num / den;
}

} // namespace weylpath
