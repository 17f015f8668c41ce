#include "doctest.h"

#include "weylpath/error.hpp"
#include "weylpath/scattering.hpp"

using namespace weylpath;

namespace {

ScatterConfig small_config() {
    ScatterConfig c;
    c.K = 120;
    c.trotterN = 40;
    c.packet = PacketSpec{2.5, 0.5, 1.0, 3.0};
    return c;
}

} // namespace

TEST_CASE("gaussian potential") {
    const PhaseGrid g(300);
    const auto v = gaussian_potential(g, 0.5, 2.0);
    CHECK(v[300] == 0.5);
    for (int l = 1; l <= 300; ++l) CHECK(v[300 + l] == v[300 - l]);
    // x = 1 is not a grid point; evaluate the formula the samples use
    CHECK(0.5 * std::exp(-2.0) == doctest::Approx(0.0676676).epsilon(1e-6));
    CHECK_THROWS_AS(gaussian_potential(g, 0.5, 0.0), DomainError);
}

TEST_CASE("packet statistics") {
    const PhaseGrid g(300);
    const PacketStats centred = packet_stats(g, gaussian_packet(g, PacketSpec{0.0, 0.25, 1.0, 0.0}));
    CHECK(std::abs(centred.meanX) < 1e-10);
    CHECK(std::abs(centred.meanP) < 1e-10);

    const StateVector psi = gaussian_packet(g, PacketSpec{2.5, 0.25, 1.0, 0.0});
    CHECK(std::abs(psi.norm() - 1.0) < 1e-14);
    const PacketStats s = packet_stats(g, psi);
    CHECK(std::abs(s.meanP - 2.5) < 1e-5);
    CHECK(std::abs(s.meanX) < 1e-12);
    CHECK(std::abs(s.deltaX * s.deltaP - 0.5) < 1e-3);

    const PacketStats w = packet_stats(g, gaussian_packet(g, PacketSpec{2.5, 0.3, 1.0, 0.0}));
    CHECK(w.deltaX == doctest::Approx(1.666667).epsilon(1e-5));

    const PacketStats delta = packet_stats(g, StateVector::basis_vector(g.basis(), 7, g.spacing()));
    CHECK(delta.deltaX == 0.0);
    CHECK_THROWS_AS(packet_stats(g, StateVector(g.basis(), CVector::Zero(601))), DomainError);
    CHECK_THROWS_AS(gaussian_packet(g, PacketSpec{1.0, 0.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("edge leakage flag") {
    const PhaseGrid g(40);
    const StateVector centred = gaussian_packet(g, PacketSpec{0.0, 1.0, 1.0, 0.0});
    CHECK(edge_probability(centred) < kEdgeWarningThreshold);
    const StateVector edge = StateVector::basis_vector(g.basis(), 40, g.spacing());
    CHECK(edge_probability(edge) == 1.0);
}

TEST_CASE("wrap-around guard") {
    ScatterConfig c = small_config();
    CHECK_NOTHROW(validate(c));
    c.packet.tau = 40.0;
    CHECK_THROWS_AS(validate(c), GuardViolation);
    CHECK_THROWS_AS(scattering_state(c), GuardViolation);
    c = small_config();
    c.trotterN = 0;
    CHECK_THROWS_AS(validate(c), DomainError);
}

TEST_CASE("free limit") {
    ScatterConfig c = small_config();
    c.lambda = 0.0;
    const ScatteringRun run = scattering_state(c);
    PacketSpec at_zero = c.packet;
    at_zero.tau = 0.0;
    const StateVector free0 = gaussian_packet(run.grid, at_zero);
    CHECK(max_abs(run.collision.orthonormal() - free0.orthonormal()) < 1e-10);

    const HalfShellResult t = half_shell_T(c);
    for (std::size_t i = 0; i < t.tReal.size(); ++i) {
        CHECK(t.tReal[i] == 0.0);
        CHECK(t.tImag[i] == 0.0);
    }
    c.K = 60;
    c.trotterN = 20;
    c.packet.tau = 2.0;
    const DenseOperator s = s_operator(c);
    CHECK(max_abs(s.matrix - CMatrix::Identity(s.matrix.rows(), s.matrix.cols())) < 1e-10);
}

TEST_CASE("weak coupling: T approaches the Born column") {
    ScatterConfig c = small_config();
    c.lambda = 1e-5;
    const HalfShellResult t = half_shell_T(c);
    std::size_t peak = 0;
    for (std::size_t i = 0; i < t.bornReal.size(); ++i)
        if (std::hypot(t.bornReal[i], t.bornImag[i]) > std::hypot(t.bornReal[peak], t.bornImag[peak])) peak = i;
    const cplx ratio = cplx(t.tReal[peak], t.tImag[peak]) / cplx(t.bornReal[peak], t.bornImag[peak]);
    CHECK(std::abs(ratio - 1.0) < 1e-4);
}

TEST_CASE("scattering state keeps its norm and converges in N") {
    ScatterConfig c = small_config();
    const ScatteringRun a = scattering_state(c);
    CHECK(a.normDrift < 1e-10);
    CHECK_FALSE(a.leakWarning);
    c.trotterN = 80;
    const ScatteringRun b = scattering_state(c);
    c.trotterN = 160;
    const ScatteringRun d = scattering_state(c);
    const double e1 = (a.collision.orthonormal() - d.collision.orthonormal()).norm();
    const double e2 = (b.collision.orthonormal() - d.collision.orthonormal()).norm();
    // Richardson-style: distances to the finest run scale like 1/N
    CHECK(e1 / e2 == doctest::Approx(3.0).epsilon(0.15));
    CHECK(std::abs(a.collision.norm() - 1.0) < 1e-10);
}

TEST_CASE("S operator") {
    ScatterConfig c;
    c.K = 100;
    c.trotterN = 25;
    c.packet = PacketSpec{2.5, 0.5, 1.0, 2.5};
    const DenseOperator s = s_operator(c);
    CHECK(max_abs(s.matrix.adjoint() * s.matrix - CMatrix::Identity(201, 201)) < 1e-9);

    // tau doubled at fixed dt: packet-averaged element stable
    const PhaseGrid g(c.K);
    PacketSpec in = c.packet;
    in.tau = 0.0;
    const CVector psi = gaussian_packet(g, in).orthonormal();
    const cplx a = psi.dot(s.matrix * psi);
    ScatterConfig c2 = c;
    c2.trotterN = 50;
    c2.packet.tau = 5.0;
    const DenseOperator s2 = s_operator(c2);
    const cplx b = psi.dot(s2.matrix * psi);
    CHECK(std::abs(a - b) / std::abs(a) < 0.01);

    c.K = 401;
    CHECK_THROWS_AS(s_operator(c), GuardViolation);
}

TEST_CASE("Lippmann-Schwinger oracle") {
    const LsResult zero = ls_oracle(0.0, 2.0, 1.0, 2.5, 64);
    CHECK(zero.onShell == cplx(0.0, 0.0));

    const double born = gaussian_potential_momentum(1e-4, 2.0, 2.5, 2.5);
    const LsResult weak = ls_oracle(1e-4, 2.0, 1.0, 2.5, 64);
    CHECK(std::abs(weak.onShell - born) / born < 1e-3);

    const LsResult r = ls_oracle(0.5, 2.0, 1.0, 2.5, 128);
    CHECK(r.onShell.real() == doctest::Approx(0.1020197563).epsilon(1e-8));
    CHECK(r.onShell.imag() == doctest::Approx(-0.0133813788).epsilon(1e-7));
    CHECK(r.backward.real() == doctest::Approx(0.00757813).epsilon(1e-5));
    CHECK(r.convergenceDelta < 1e-3);
    CHECK(gaussian_potential_momentum(0.5, 2.0, 2.5, 2.5) == doctest::Approx(0.0997355701));

    CHECK_THROWS_AS(ls_oracle(0.5, 2.0, 1.0, -1.0, 64), DomainError);
    CHECK_THROWS_AS(ls_oracle(0.5, 2.0, 1.0, 2.5, 32), DomainError);
}

TEST_CASE("half-shell T at the paper configuration") {
    const ScatterConfig c;
    const HalfShellResult r = half_shell_T(c);
    CHECK(r.pGrid.size() == 601);
    CHECK(r.tReal.size() == 601);
    CHECK(r.bornImag.size() == 601);
    CHECK(r.normDrift < 1e-9);
    const LsResult ls = ls_oracle(c.lambda, c.alpha, c.packet.mass, c.packet.meanP, 128);
    CHECK(std::abs(r.onShellT - ls.onShell) / std::abs(ls.onShell) < 0.02);
    CHECK(std::abs(r.onShellBorn - r.onShellT) / std::abs(r.onShellT) > 0.02);
}
