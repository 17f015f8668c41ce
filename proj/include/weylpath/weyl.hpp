#pragma once

#include <algorithm>
#include <vector>

#include "weylpath/basis.hpp"
#include "weylpath/state.hpp"
#include "weylpath/types.hpp"

namespace weylpath {

/// Operator as an M x M matrix in the X-eigenbasis (= eigenbasis of V).
struct DenseOperator {
    WeylBasis basis;
    CMatrix matrix;
};

enum class Ordering { UV, VU };

/// c(m, n) multiplies U^m V^n (ordering UV) or V^m U^n (ordering VU),
/// exponents 0..M-1.
struct WeylCoefficients {
    WeylBasis basis;
    CMatrix c;
    Ordering ordering = Ordering::UV;
};

/// Cyclic shift U|m> = |m+1>, U^M = I.
DenseOperator build_shift_U(const WeylBasis& basis);
/// Clock V|n> = e^{2 pi i n/M}|n>.
DenseOperator build_clock_V(const WeylBasis& basis);

/// Eigenvector |u_n> of U with <k|u_n> = e^{-2 pi i nk/M}/sqrt(M).
StateVector fourier_column(const WeylBasis& basis, int n);
/// All |u_n> as columns, column position = position of label n.
CMatrix fourier_matrix(const WeylBasis& basis);

/// Integer power, negative exponents allowed (U and V are unitary, but this
/// handles any invertible operator through an LU solve).
DenseOperator operator_power(const DenseOperator& op, int exponent);

WeylCoefficients weyl_decompose(const DenseOperator& op, Ordering ordering = Ordering::UV);
DenseOperator weyl_reconstruct(const WeylCoefficients& coeffs);

/// |<a|b>|^2 / (<a|a><b|b>). Throws DomainError on a zero vector.
double transition_probability(const StateVector& a, const StateVector& b);

/// Max-norm residuals of the defining relations.
struct WeylResiduals {
    double shiftPower = 0.0;   ///< U^M - I
    double clockPower = 0.0;   ///< V^M - I
    double commutation = 0.0;  ///< UV - VU e^{-2 pi i/M}
    double completeness = 0.0; ///< sum_n |u_n><u_n| - I
    double max() const { return std::max({shiftPower, clockPower, commutation, completeness}); }
};

WeylResiduals weyl_residuals(const WeylBasis& basis);

// ---------------------------------------------------------------------------
// Qbit factorization for M = 2^L.
//
// Sites are numbered 1..L with n = sum_m n_m 2^{m-1}; site 1 is the least
// significant bit, which is also the fastest-varying tensor factor.

struct QbitFactorization {
    int qbits = 0;
    /// Per-site (U_i, V_i) = (sigma_1, sigma_3).
    std::vector<std::pair<CMatrix, CMatrix>> gates;

    int dim() const { return 1 << qbits; }
    /// prod_m U_m^{n_m} as a 2^L x 2^L matrix.
    CMatrix u_monomial(int n) const;
    /// prod_m V_m^{n_m}.
    CMatrix v_monomial(int n) const;
    /// Kronecker product of per-site gates (sigma_3 if clock) over the set bits of n.
    CMatrix monomial(int n, bool clock) const;
    /// Single-site operator embedded in the full register.
    CMatrix embed(int site, const CMatrix& gate) const;
};

QbitFactorization qbit_factorize(int qbits);

/// Dense operator defined by U_i|v_{..n_i..}> = |v_{..n_i+1 mod 2..}>:
/// XOR of the basis label with n. Equals u_monomial(n) by construction of
/// the gates; this is the independent dense side of that check.
CMatrix bitflip_operator(int qbits, int n);
/// Dense diag((-1)^{popcount(n & k)}), the product of sigma_3 over set bits.
CMatrix phaseflip_operator(int qbits, int n);

/// Max residual of: tensor monomials vs bitflip/phaseflip for every n (or
/// single-site n only above max_exhaustive_qbits), V_i U_i = -U_i V_i,
/// U_i^2 = V_i^2 = I.
double qbit_structure_residual(const QbitFactorization& q, int max_exhaustive_qbits = 6);

/// max over 0 <= n <= max_power of |prod U_m^{n_m} - U^n| and the same for V,
/// the identification U^n = prod U_m^{n_m}. Zero for one qbit; for two or
/// more qbits the tensor monomials only generate Z_2^L, so this is O(1).
double qbit_cyclic_mismatch(const QbitFactorization& q, int max_power);

} // namespace weylpath
