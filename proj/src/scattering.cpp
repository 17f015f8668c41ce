#include "weylpath/scattering.hpp"

#include <cmath>
#include <sstream>

#include "weylpath/error.hpp"
#include "weylpath/kernels.hpp"

namespace weylpath {

namespace {

std::span<const cplx> view(const CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Raw momentum samples g(p_n), storage order -K..K.
CVector packet_momentum_samples(const PhaseGrid& grid, const PacketSpec& spec) {
    const int K = grid.half_width();
    const double eps = grid.spacing();
    CVector g(grid.dim());
    for (int n = -K; n <= K; ++n) {
        const double p = n * eps;
        const double gauss = -(p - spec.meanP) * (p - spec.meanP) / (4.0 * spec.deltaP * spec.deltaP);
        const double free_phase = p * p * spec.tau / (2.0 * spec.mass);
        g(n + K) = std::exp(gauss) * cplx{std::cos(free_phase), std::sin(free_phase)};
    }
    return g;
}

void validate_packet(const PacketSpec& spec) {
    if (!(spec.deltaP > 0.0)) {
        throw DomainError("packet deltaP must be > 0");
    }
    if (!(spec.mass > 0.0)) {
        throw DomainError("packet mass must be > 0");
    }
}

} // namespace

void validate(const ScatterConfig& config) {
    if (config.K < 1) {
        throw DomainError("scatter: K must be >= 1");
    }
    if (config.trotterN < 1) {
        throw DomainError("scatter: trotterN must be >= 1");
    }
    if (!(config.alpha > 0.0)) {
        throw DomainError("scatter: alpha must be > 0");
    }
    validate_packet(config.packet);
    if (config.packet.tau < 0.0) {
        throw DomainError("scatter: tau must be >= 0");
    }
    const PhaseGrid grid(config.K);
    const double dx = 1.0 / (2.0 * config.packet.deltaP);
    const double reach = std::abs(config.packet.meanP) * config.packet.tau / config.packet.mass + 4.0 * dx;
    if (reach >= grid.extent()) {
        std::ostringstream msg;
        msg << "wrap-around guard: <p> tau/m + 4 dx = " << reach << " >= K eps = " << grid.extent()
            << "; the packet would reappear at the opposite edge";
        throw GuardViolation(msg.str());
    }
    const double range = std::sqrt(1.0 / config.alpha);
    if (config.lambda != 0.0 && 4.0 * range >= grid.extent()) {
        std::ostringstream msg;
        msg << "potential range 1/sqrt(alpha) = " << range << " is not small against K eps = " << grid.extent();
        throw GuardViolation(msg.str());
    }
}

StateVector gaussian_packet(const PhaseGrid& grid, const PacketSpec& spec) {
    validate_packet(spec);
    CVector g = packet_momentum_samples(grid, spec);
    const double n = std::sqrt(kernels::squared_norm(view(g)));
    if (n == 0.0) {
        throw DomainError("gaussian_packet: packet vanishes on the grid");
    }
    g /= n;
    return grid_state(grid, to_coordinate(grid, g));
}

PacketStats packet_stats(const PhaseGrid& grid, const StateVector& psi) {
    if (psi.size() != grid.dim()) {
        throw DomainError("packet_stats: state and grid dimensions differ");
    }
    const CVector& x_amp = psi.orthonormal();
    const double total = kernels::squared_norm(view(x_amp));
    if (total == 0.0) {
        throw DomainError("packet_stats: zero state");
    }
    const CVector p_amp = to_momentum(grid, x_amp);
    const double p_total = kernels::squared_norm(view(p_amp));

    const int M = grid.dim();
    const std::vector<double> pts = grid.points();
    std::vector<double> terms(M);

    auto moment = [&](const CVector& amp, double norm, double centre, int power) {
        for (int i = 0; i < M; ++i) {
            const double d = pts[i] - centre;
            terms[i] = (power == 1 ? d : d * d) * std::norm(amp(i));
        }
        return kernels::pairwise_sum(std::span<const double>(terms)) / norm;
    };

    PacketStats s;
    s.meanX = moment(x_amp, total, 0.0, 1);
    s.meanP = moment(p_amp, p_total, 0.0, 1);
    s.deltaX = std::sqrt(moment(x_amp, total, s.meanX, 2));
    s.deltaP = std::sqrt(moment(p_amp, p_total, s.meanP, 2));
    return s;
}

double edge_probability(const StateVector& psi, int sites) {
    const CVector& a = psi.orthonormal();
    const int M = psi.size();
    const double total = kernels::squared_norm(view(a));
    if (total == 0.0) {
        throw DomainError("edge_probability: zero state");
    }
    const int w = std::min(sites, M / 2);
    double edge = 0.0;
    for (int i = 0; i < w; ++i) {
        edge += std::norm(a(i)) + std::norm(a(M - 1 - i));
    }
    return edge / total;
}

std::vector<double> gaussian_potential(const PhaseGrid& grid, double lambda, double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("gaussian_potential: alpha must be > 0");
    }
    std::vector<double> v = grid.points();
    for (double& x : v) {
        x = lambda * std::exp(-alpha * x * x);
    }
    return v;
}

std::vector<double> kinetic_samples(const PhaseGrid& grid, double mass) {
    if (!(mass > 0.0)) {
        throw DomainError("kinetic_samples: mass must be > 0");
    }
    std::vector<double> k = grid.points();
    for (double& p : k) {
        p = p * p / (2.0 * mass);
    }
    return k;
}

ScatteringRun scattering_state(const ScatterConfig& config, EvolveOptions options) {
    validate(config);
    const PhaseGrid grid(config.K);
    const double dt = config.packet.tau / config.trotterN;
    const std::vector<double> kin = kinetic_samples(grid, config.packet.mass);
    const std::vector<double> pot = gaussian_potential(grid, config.lambda, config.alpha);

    StateVector initial = gaussian_packet(grid, config.packet);
    const StepKernel free = free_step_kernel(grid.basis(), kin, dt);
    const StepKernel full = full_step_kernel(free, pot, dt);
    StateVector collision = evolve(full, initial, config.trotterN, options);

    ScatteringRun run{grid, initial, collision};
    run.normDrift = std::abs(collision.norm() / initial.norm() - 1.0);
    run.edgeProbability = std::max(edge_probability(initial), edge_probability(collision));
    run.leakWarning = run.edgeProbability > kEdgeWarningThreshold;
    return run;
}

cplx momentum_component(const PhaseGrid& grid, const CVector& coordinate, double p) {
    const int M = grid.dim();
    std::vector<cplx> terms(M);
    const std::vector<double> pts = grid.points();
    for (int i = 0; i < M; ++i) {
        const double a = -p * pts[i];
        terms[i] = cplx{std::cos(a), std::sin(a)} * coordinate(i);
    }
    return kernels::pairwise_sum(std::span<const cplx>(terms)) / std::sqrt(static_cast<double>(M));
}

HalfShellResult half_shell_T(const ScatterConfig& config, EvolveOptions options) {
    const ScatteringRun run = scattering_state(config, options);
    const PhaseGrid& grid = run.grid;
    const int M = grid.dim();
    const std::vector<double> pot = gaussian_potential(grid, config.lambda, config.alpha);

    PacketSpec at_zero = config.packet;
    at_zero.tau = 0.0;
    const StateVector free0 = gaussian_packet(grid, at_zero);

    // Unit-norm states -> delta-normalized packet C g(p), C = 1/(2 sqrt(pi) dp).
    const CVector g = packet_momentum_samples(grid, at_zero);
    const double scale = std::sqrt(kernels::squared_norm(view(g))) / (2.0 * std::sqrt(kPi) * config.packet.deltaP);

    CVector v_psi = run.collision.orthonormal();
    CVector v_free = free0.orthonormal();
    for (int i = 0; i < M; ++i) {
        v_psi(i) *= pot[i] * scale;
        v_free(i) *= pot[i] * scale;
    }
    const CVector t = to_momentum(grid, v_psi);
    const CVector born = to_momentum(grid, v_free);

    HalfShellResult out;
    out.pGrid = grid.points();
    out.tReal.resize(M);
    out.tImag.resize(M);
    out.bornReal.resize(M);
    out.bornImag.resize(M);
    for (int i = 0; i < M; ++i) {
        out.tReal[i] = t(i).real();
        out.tImag[i] = t(i).imag();
        out.bornReal[i] = born(i).real();
        out.bornImag[i] = born(i).imag();
    }
    const double p0 = config.packet.meanP;
    out.onShellMomentum = p0;
    out.onShellT = momentum_component(grid, v_psi, p0);
    out.onShellBorn = momentum_component(grid, v_free, p0);
    out.backwardT = momentum_component(grid, v_psi, -p0);
    out.backwardBorn = momentum_component(grid, v_free, -p0);
    out.initialStats = packet_stats(grid, free0);
    out.normDrift = run.normDrift;
    out.leakWarning = run.leakWarning;
    return out;
}

DenseOperator s_operator(const ScatterConfig& config) {
    if (config.K > kSOperatorMaxK) {
        throw GuardViolation("s_operator: K = " + std::to_string(config.K) + " exceeds the dense limit " +
                             std::to_string(kSOperatorMaxK));
    }
    validate(config);
    const PhaseGrid grid(config.K);
    const double dt = config.packet.tau / config.trotterN;
    const std::vector<double> kin = kinetic_samples(grid, config.packet.mass);
    const std::vector<double> pot = gaussian_potential(grid, config.lambda, config.alpha);

    const StepKernel free = free_step_kernel(grid.basis(), kin, dt);
    const StepKernel full = full_step_kernel(free, pot, dt);
    const StepKernel back = free_step_kernel(grid.basis(), kin, -config.packet.tau);
    const DenseOperator x2n = operator_power({grid.basis(), full.matrix}, 2 * config.trotterN);
    CMatrix s = back.matrix * x2n.matrix * back.matrix;
    return {grid.basis(), std::move(s)};
}

} // namespace weylpath
