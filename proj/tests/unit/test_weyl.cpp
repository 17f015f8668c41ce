#include "doctest.h"

#include "oracles.hpp"
#include "weylpath/error.hpp"
#include "weylpath/propagator.hpp"
#include "weylpath/weyl.hpp"

using namespace weylpath;

TEST_CASE("basis labels and positions") {
    const WeylBasis z = WeylBasis::zero_based(4);
    CHECK(z.min_label() == 0);
    CHECK(z.max_label() == 3);
    const WeylBasis s = WeylBasis::symmetric(3);
    CHECK(s.dim() == 7);
    CHECK(s.min_label() == -3);
    CHECK(s.position(-3) == 0);
    CHECK(s.label(6) == 3);
    CHECK_THROWS_AS(s.position(4), DomainError);
    CHECK_THROWS_AS(WeylBasis(1, Labeling::ZeroBased), DomainError);
    CHECK_THROWS_AS(WeylBasis(6, Labeling::Symmetric), DomainError);
}

TEST_CASE("state normalization conventions round trip bitwise") {
    const WeylBasis b = WeylBasis::symmetric(4);
    CVector v = CVector::Random(9);
    const StateVector psi(b, v, 0.37);
    const StateVector delta = psi.as(Normalization::DeltaNormalized);
    CHECK(delta.values().isApprox(v / std::sqrt(0.37)));
    const StateVector back = StateVector::from_delta_normalized(b, delta.values(), 0.37);
    CHECK((back.orthonormal() - v).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(delta.as(Normalization::Orthonormal).orthonormal() == v);
    CHECK_THROWS_AS(StateVector(b, CVector::Zero(3)), DomainError);
}

TEST_CASE("shift and clock small cases") {
    const WeylBasis b2 = WeylBasis::zero_based(2);
    CMatrix s1(2, 2);
    s1 << 0, 1, 1, 0;
    CHECK(max_abs(build_shift_U(b2).matrix - s1) == 0.0);
    CMatrix s3(2, 2);
    s3 << 1, 0, 0, -1;
    CHECK(max_abs(build_clock_V(b2).matrix - s3) < 1e-15);

    const WeylBasis b3 = WeylBasis::zero_based(3);
    const CVector e1 = build_shift_U(b3).matrix * StateVector::basis_vector(b3, 0).orthonormal();
    CHECK(std::abs(e1(1) - 1.0) == 0.0);

    const DenseOperator u5 = operator_power(build_shift_U(WeylBasis::zero_based(5)), 5);
    CHECK(max_abs(u5.matrix - CMatrix::Identity(5, 5)) < 1e-14);

    const CMatrix v4 = build_clock_V(WeylBasis::zero_based(4)).matrix;
    CHECK(std::abs(v4(1, 1) - cplx(0, 1)) < 1e-15);
}

TEST_CASE("commutation relation and residual summary") {
    for (int M : {2, 3, 7, 16, 33}) {
        for (const WeylBasis& b : {WeylBasis::zero_based(M), WeylBasis(M, M % 2 ? Labeling::Symmetric : Labeling::ZeroBased)}) {
            const CMatrix u = build_shift_U(b).matrix;
            const CMatrix v = build_clock_V(b).matrix;
            CHECK(max_abs(u * v - v * u * std::polar(1.0, -2 * kPi / M)) < 1e-13);
            const WeylResiduals r = weyl_residuals(b);
            CHECK(r.max() < 1e-12);
        }
    }
}

TEST_CASE("fourier columns") {
    const StateVector u0 = fourier_column(WeylBasis::zero_based(2), 0);
    CHECK(std::abs(u0.orthonormal()(0) - 1 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(u0.orthonormal()(1) - 1 / std::sqrt(2.0)) < 1e-15);
    const StateVector u1 = fourier_column(WeylBasis::zero_based(4), 1);
    CHECK(std::abs(u1.orthonormal()(1) - cplx(0, -0.5)) < 1e-15);
    CHECK_THROWS_AS(fourier_column(WeylBasis::zero_based(4), 4), DomainError);

    for (const WeylBasis& b : {WeylBasis::zero_based(6), WeylBasis::symmetric(5)}) {
        const int M = b.dim();
        const CMatrix u = build_shift_U(b).matrix;
        const CMatrix f = fourier_matrix(b);
        for (int n = b.min_label(); n <= b.max_label(); ++n) {
            const CVector col = fourier_column(b, n).orthonormal();
            CHECK(max_abs(u * col - std::polar(1.0, 2 * kPi * n / M) * col) < 1e-13);
            CHECK(max_abs(col.cwiseAbs() - RVector::Constant(M, 1 / std::sqrt(double(M))).cast<double>()) < 1e-15);
            CHECK(max_abs(col - f.col(b.position(n))) == 0.0);
        }
        CHECK(max_abs(f * f.adjoint() - CMatrix::Identity(M, M)) < 1e-13);
    }
}

TEST_CASE("weyl decomposition") {
    const WeylBasis b = WeylBasis::zero_based(5);
    const WeylCoefficients id = weyl_decompose({b, CMatrix::Identity(5, 5)});
    CHECK(std::abs(id.c(0, 0) - 1.0) < 1e-14);
    CHECK(id.c.cwiseAbs().sum() - 1.0 < 1e-13);

    const WeylCoefficients cu = weyl_decompose(build_shift_U(b));
    CHECK(std::abs(cu.c(1, 0) - 1.0) < 1e-14);
    CHECK(cu.c.cwiseAbs().sum() - 1.0 < 1e-13);

    for (int M : {3, 4}) {
        const WeylBasis bm = WeylBasis::zero_based(M);
        const CMatrix h = random_hermitian(M, 7 + M);
        for (Ordering o : {Ordering::UV, Ordering::VU}) {
            const WeylCoefficients c = weyl_decompose({bm, h}, o);
            CHECK(max_abs(weyl_reconstruct(c).matrix - h) < 1e-12);
            // coefficient space round trip
            WeylCoefficients rnd{bm, CMatrix::Random(M, M), o};
            CHECK(max_abs(weyl_decompose(weyl_reconstruct(rnd), o).c - rnd.c) < 1e-12);
        }
    }

    WeylCoefficients scalar{b, CMatrix::Zero(5, 5)};
    scalar.c(0, 0) = 2.5;
    CHECK(max_abs(weyl_reconstruct(scalar).matrix - 2.5 * CMatrix::Identity(5, 5)) < 1e-14);

    // c_11 = 1: UV versus VU differ by e^{-2 pi i/M}
    WeylCoefficients uv{b, CMatrix::Zero(5, 5), Ordering::UV};
    uv.c(1, 1) = 1.0;
    WeylCoefficients vu{b, CMatrix::Zero(5, 5), Ordering::VU};
    vu.c(1, 1) = 1.0;
    CHECK(max_abs(weyl_reconstruct(uv).matrix - weyl_reconstruct(vu).matrix * std::polar(1.0, -2 * kPi / 5)) <
          1e-14);
}

TEST_CASE("transition probability") {
    const WeylBasis b = WeylBasis::zero_based(6);
    const StateVector x = StateVector::basis_vector(b, 2);
    const StateVector y = StateVector::basis_vector(b, 3);
    CHECK(transition_probability(x, x) == doctest::Approx(1.0));
    CHECK(transition_probability(x, y) == 0.0);
    CHECK(transition_probability(x, fourier_column(b, 4)) == doctest::Approx(1.0 / 6));
    CHECK_THROWS_AS(transition_probability(x, StateVector(b, CVector::Zero(6))), DomainError);
}

TEST_CASE("qbit gates reproduce the dense operators for one qbit") {
    const QbitFactorization q = qbit_factorize(1);
    const WeylBasis b = WeylBasis::zero_based(2);
    CHECK(max_abs(q.u_monomial(1) - build_shift_U(b).matrix) == 0.0);
    CHECK(max_abs(q.v_monomial(1) - build_clock_V(b).matrix) < 1e-15);
    CHECK(qbit_cyclic_mismatch(q, 1) < 1e-15);
    CHECK_THROWS_AS(qbit_factorize(0), DomainError);
}

TEST_CASE("qbit tensor monomials equal bit-flip and phase-flip actions") {
    for (int L = 1; L <= 6; ++L) {
        const QbitFactorization q = qbit_factorize(L);
        CHECK(qbit_structure_residual(q) == 0.0);
    }
    const QbitFactorization q3 = qbit_factorize(3);
    const CMatrix u1 = q3.embed(1, q3.gates[0].first);
    const CMatrix u3 = q3.embed(3, q3.gates[2].first);
    CHECK(max_abs(u1 * u3 - q3.u_monomial(5)) == 0.0);
    CHECK(max_abs(u1 * u3 - u3 * u1) == 0.0);
}

TEST_CASE("tensor monomials are not the cyclic powers beyond one qbit") {
    // prod U_m^{n_m} squares to I for every n, while U^2 != I once M > 2.
    const QbitFactorization q = qbit_factorize(2);
    const CMatrix u = build_shift_U(WeylBasis::zero_based(4)).matrix;
    CHECK(max_abs(q.u_monomial(1) - u) > 0.5);
    CHECK(max_abs(q.u_monomial(1) * q.u_monomial(1) - CMatrix::Identity(4, 4)) == 0.0);
    CHECK(max_abs(u * u - CMatrix::Identity(4, 4)) > 0.5);
    CHECK(qbit_cyclic_mismatch(q, 3) > 0.5);
}
