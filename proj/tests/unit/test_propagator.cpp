#include "doctest.h"

#include "oracles.hpp"
#include "weylpath/error.hpp"
#include "weylpath/grid.hpp"
#include "weylpath/propagator.hpp"
#include "weylpath/scattering.hpp"
#include "weylpath/weyl.hpp"

using namespace weylpath;

namespace {

std::vector<double> quadratic(const PhaseGrid& g, double c = 0.5) {
    std::vector<double> k = g.points();
    for (double& p : k) p = c * p * p;
    return k;
}

} // namespace

TEST_CASE("mixed symbol round trip and Hermiticity") {
    for (int M : {3, 4, 7}) {
        const WeylBasis b = WeylBasis::zero_based(M);
        const CMatrix h = random_hermitian(M, 100 + M);
        const MixedHamiltonian s = mixed_symbol(b, h);
        const CMatrix back = operator_from_symbol(s);
        CHECK(max_abs(back - h) < 1e-12);
        CHECK(max_abs(back - back.adjoint()) < 1e-10);
    }
    const PhaseGrid g(4);
    const auto kin = quadratic(g);
    const auto pot = gaussian_potential(g, 0.5, 2.0);
    const MixedHamiltonian split = split_symbol(g.basis(), kin, pot);
    const CMatrix h = operator_from_symbol(split);
    CHECK(max_abs(h - h.adjoint()) < 1e-12);
    CHECK_THROWS_AS(split_symbol(g.basis(), kin, std::vector<double>(3)), DomainError);
}

TEST_CASE("free kernel basics") {
    const PhaseGrid g(1);
    const auto kin = quadratic(g);
    const StepKernel k = free_step_kernel(g.basis(), kin, 0.1);
    CHECK(column_sum_defect(k) < 1e-12);
    CHECK(unitarity_defect(k) < 1e-12);

    const std::vector<double> zero(g.dim(), 0.0);
    CHECK(max_abs(free_step_kernel(g.basis(), zero, 0.3).matrix - CMatrix::Identity(3, 3)) < 1e-15);
    CHECK(max_abs(free_step_kernel(g.basis(), kin, 0.0).matrix - CMatrix::Identity(3, 3)) < 1e-15);

    for (int K : {5, 20, 100}) {
        const PhaseGrid gk(K);
        const auto kk = quadratic(gk);
        const StepKernel f = free_step_kernel(gk.basis(), kk, 0.07);
        const StepKernel b = free_step_kernel(gk.basis(), kk, -0.07);
        CHECK(column_sum_defect(f) < 1e-10);
        CHECK(unitarity_defect(f) < 1e-12);
        CHECK(max_abs(f.matrix * b.matrix - CMatrix::Identity(gk.dim(), gk.dim())) < 1e-12);
    }
}

TEST_CASE("full kernel") {
    const PhaseGrid g(20);
    const auto kin = quadratic(g);
    const StepKernel free = free_step_kernel(g.basis(), kin, 0.05);
    const std::vector<double> zero(g.dim(), 0.0);
    CHECK(full_step_kernel(free, zero, 0.05).matrix == free.matrix);

    const StepKernel x = full_step_kernel(free, gaussian_potential(g, 0.5, 2.0), 0.05);
    CHECK(unitarity_defect(x) < 1e-12);
    // deviation from the free kernel is linear in lambda
    const double d1 = max_abs(full_step_kernel(free, gaussian_potential(g, 1e-3, 2.0), 0.05).matrix - free.matrix);
    const double d2 = max_abs(full_step_kernel(free, gaussian_potential(g, 5e-4, 2.0), 0.05).matrix - free.matrix);
    CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(1e-3));
    CHECK_THROWS_AS(full_step_kernel(x, zero, 0.05), DomainError);
}

TEST_CASE("mixed kernel") {
    const PhaseGrid g(2);
    const WeylBasis b = g.basis();
    const auto kin = quadratic(g);
    const std::vector<double> zero(g.dim(), 0.0);
    const StepKernel id = mixed_step_kernel(b, split_symbol(b, zero, zero), 0.2);
    CHECK(max_abs(id.matrix - CMatrix::Identity(5, 5)) < 1e-14);

    const StepKernel m = mixed_step_kernel(b, split_symbol(b, kin, zero), 0.2);
    CHECK(max_abs(m.matrix - free_step_kernel(b, kin, 0.2).matrix) < 1e-12);

    // p^2/2 + x^2/2: non-unitarity shrinks as dt^2
    const auto pot = quadratic(g);
    const MixedHamiltonian h = split_symbol(b, kin, pot);
    const double e1 = unitarity_defect(mixed_step_kernel(b, h, 0.05));
    const double e2 = unitarity_defect(mixed_step_kernel(b, h, 0.025));
    CHECK(e1 > 0.0);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("evolution paths agree") {
    const PhaseGrid g(50);
    const StepKernel x = full_step_kernel(free_step_kernel(g.basis(), quadratic(g), 0.05), gaussian_potential(g, 0.5, 2.0), 0.05);
    const StateVector psi = gaussian_packet(g, PacketSpec{1.0, 0.5, 1.0, 0.0});
    const StateVector same = evolve(x, psi, 0);
    CHECK(same.orthonormal() == psi.orthonormal());

    const StateVector ds = evolve(x, psi, 30, {kernels::Exec::Serial, ApplyPath::Dense});
    const StateVector dp = evolve(x, psi, 30, {kernels::Exec::Parallel, ApplyPath::Dense});
    const StateVector sp = evolve(x, psi, 30, {kernels::Exec::Parallel, ApplyPath::Spectral});
    CHECK(ds.orthonormal() == dp.orthonormal());
    CHECK(max_abs(ds.orthonormal() - sp.orthonormal()) < 1e-11);
    CHECK(std::abs(sp.norm() - 1.0) < 1e-12);
    CHECK_THROWS_AS(evolve(x, psi, -1), DomainError);

    const StepKernel mixed = mixed_step_kernel(g.basis(), split_symbol(g.basis(), quadratic(g), quadratic(g)), 0.01);
    CHECK_THROWS_AS(evolve(mixed, psi, 1, {kernels::Exec::Serial, ApplyPath::Spectral}), DomainError);
}

TEST_CASE("free evolution conserves momentum statistics") {
    const PhaseGrid g(150);
    const StateVector psi = gaussian_packet(g, PacketSpec{1.5, 0.4, 1.0, 0.0});
    const StepKernel f = free_step_kernel(g.basis(), quadratic(g), 0.1);
    const StateVector out = evolve(f, psi, 40, {kernels::Exec::Parallel, ApplyPath::Spectral});
    const PacketStats a = packet_stats(g, psi);
    const PacketStats b = packet_stats(g, out);
    CHECK(std::abs(a.meanP - b.meanP) < 1e-8);
    CHECK(std::abs(a.deltaP - b.deltaP) < 1e-8);
    CHECK(b.meanX == doctest::Approx(a.meanX + 1.5 * 4.0).epsilon(1e-6));
}

TEST_CASE("Trotter error is first order on a small grid") {
    const PhaseGrid g(10);
    const auto kin = quadratic(g);
    const auto pot = gaussian_potential(g, 0.5, 2.0);
    const CMatrix h = operator_from_symbol(split_symbol(g.basis(), kin, pot));
    const double t = 1.0;
    const StateVector psi = gaussian_packet(g, PacketSpec{0.5, 0.5, 1.0, 0.0});
    const CVector exact = oracle::expm_hermitian(h, t) * psi.orthonormal();
    std::vector<int> ns{8, 16, 32, 64};
    std::vector<double> err;
    for (int n : ns) {
        const StepKernel x = full_step_kernel(free_step_kernel(g.basis(), kin, t / n), pot, t / n);
        err.push_back((evolve(x, psi, n).orthonormal() - exact).cwiseAbs().maxCoeff());
    }
    const double order = oracle::convergence_order(ns, err);
    CHECK(order > 0.8);
    CHECK(order < 1.2);
}

TEST_CASE("conditional probabilities") {
    const WeylBasis b = WeylBasis::zero_based(4);
    for (int n = 0; n < 4; ++n) {
        CHECK(std::abs(conditional_probability(b, 2, n, 2) - 0.25) < 1e-16);
    }
    CHECK(std::abs(conditional_probability(b, 3, 1, 1) + 0.25) < 1e-15);
    for (int k = 0; k < 4; ++k) {
        cplx total = 0;
        for (int n = 0; n < 4; ++n)
            for (int kn = 0; kn < 4; ++kn) total += conditional_probability(b, kn, n, k);
        CHECK(std::abs(total - 1.0) < 1e-15);
    }
    CHECK_THROWS_AS(conditional_probability(b, 4, 0, 0), DomainError);
}

TEST_CASE("brute-force path sums") {
    const WeylBasis b3 = WeylBasis::zero_based(3);
    const MixedHamiltonian zero{b3, CMatrix::Zero(3, 3)};
    for (int ki = 0; ki < 3; ++ki) {
        for (int kf = 0; kf < 3; ++kf) {
            const PathEnsembleResult r = brute_force_amplitude(b3, zero, 0.1, 1, ki, kf, true);
            CHECK(std::abs(r.amplitude - (ki == kf ? 1.0 : 0.0)) < 1e-14);
            CHECK(std::abs(r.normalizationSum - 1.0) < 1e-14);
        }
    }

    const MixedHamiltonian h = mixed_symbol(b3, random_hermitian(3, 5));
    const PathEnsembleResult off = brute_force_amplitude(b3, h, 0.2, 3, 0, 1, false);
    CHECK(off.pathCount == 729);
    CHECK(std::abs(off.normalizationSum - 1.0) < 1e-10);

    const CMatrix t2 = operator_power({b3, mixed_step_kernel(b3, h, 0.2).matrix}, 2).matrix;
    for (int ki = 0; ki < 3; ++ki) {
        for (int kf = 0; kf < 3; ++kf) {
            const PathEnsembleResult s = brute_force_amplitude(b3, h, 0.2, 2, ki, kf, true, kernels::Exec::Serial);
            const PathEnsembleResult p = brute_force_amplitude(b3, h, 0.2, 2, ki, kf, true, kernels::Exec::Parallel);
            CHECK(s.amplitude == p.amplitude);
            CHECK(std::abs(s.amplitude - t2(kf, ki)) < 1e-10);
        }
    }

    // symmetric labels follow the same rules
    const WeylBasis bs = WeylBasis::symmetric(1);
    const MixedHamiltonian hs = mixed_symbol(bs, random_hermitian(3, 9));
    const CMatrix ts = operator_power({bs, mixed_step_kernel(bs, hs, 0.3).matrix}, 2).matrix;
    CHECK(std::abs(brute_force_amplitude(bs, hs, 0.3, 2, -1, 1, true).amplitude - ts(bs.position(1), bs.position(-1))) <
          1e-10);

    CHECK_THROWS_AS(brute_force_amplitude(WeylBasis::zero_based(11), mixed_symbol(WeylBasis::zero_based(11),
                                                                                     random_hermitian(11, 1)),
                                          0.1, 4, 0, 0, true),
                    GuardViolation);
}
