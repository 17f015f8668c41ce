#include "weylpath/weyl.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Sparse>

#include "weylpath/error.hpp"

namespace weylpath {

namespace {

// e^{2 pi i r/M} with the exponent reduced mod M first, so large label
// products keep full precision.
cplx unit_root(long long r, int M) {
    long long k = r % M;
    if (k < 0) {
        k += M;
    }
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M);
    return {std::cos(angle), std::sin(angle)};
}

int wrap(int position, int M) {
    int p = position % M;
    return p < 0 ? p + M : p;
}

} // namespace

DenseOperator build_shift_U(const WeylBasis& basis) {
    const int M = basis.dim();
    CMatrix u = CMatrix::Zero(M, M);
    for (int p = 0; p < M; ++p) {
        u(wrap(p + 1, M), p) = 1.0;
    }
    return {basis, std::move(u)};
}

DenseOperator build_clock_V(const WeylBasis& basis) {
    const int M = basis.dim();
    CMatrix v = CMatrix::Zero(M, M);
    for (int p = 0; p < M; ++p) {
        v(p, p) = unit_root(basis.label(p), M);
    }
    return {basis, std::move(v)};
}

StateVector fourier_column(const WeylBasis& basis, int n) {
    if (!basis.contains(n)) {
        throw DomainError("fourier_column: index " + std::to_string(n) + " outside basis range");
    }
    const int M = basis.dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    CVector col(M);
    for (int p = 0; p < M; ++p) {
        col(p) = scale * unit_root(-static_cast<long long>(n) * basis.label(p), M);
    }
    return StateVector(basis, std::move(col));
}

CMatrix fourier_matrix(const WeylBasis& basis) {
    const int M = basis.dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    CMatrix f(M, M);
    for (int col = 0; col < M; ++col) {
        const long long n = basis.label(col);
        for (int row = 0; row < M; ++row) {
            f(row, col) = scale * unit_root(-n * basis.label(row), M);
        }
    }
    return f;
}

DenseOperator operator_power(const DenseOperator& op, int exponent) {
    const int M = op.basis.dim();
    CMatrix base = op.matrix;
    if (exponent < 0) {
        base = op.matrix.partialPivLu().inverse();
        exponent = -exponent;
    }
    CMatrix result = CMatrix::Identity(M, M);
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * base;
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return {op.basis, std::move(result)};
}

WeylCoefficients weyl_decompose(const DenseOperator& op, Ordering ordering) {
    const WeylBasis& basis = op.basis;
    const int M = basis.dim();
    if (op.matrix.rows() != M || op.matrix.cols() != M) {
        throw DomainError("weyl_decompose: operator shape does not match basis");
    }
    // (U^a V^n)_{k+a,k} = e^{2 pi i n k/M}; (V^n U^a)_{k+a,k} = e^{2 pi i n (k+a)/M}.
    // Both coefficient sets are DFTs of the a-th cyclic diagonal.
    CMatrix c = CMatrix::Zero(M, M);
    for (int a = 0; a < M; ++a) {
        for (int n = 0; n < M; ++n) {
            cplx acc = 0.0;
            for (int p = 0; p < M; ++p) {
                const long long k = basis.label(p);
                const long long phase_label = ordering == Ordering::UV ? k : k + a;
                acc += unit_root(-n * phase_label, M) * op.matrix(wrap(p + a, M), p);
            }
            acc /= static_cast<double>(M);
            if (ordering == Ordering::UV) {
                c(a, n) = acc;
            } else {
                c(n, a) = acc;
            }
        }
    }
    return {basis, std::move(c), ordering};
}

DenseOperator weyl_reconstruct(const WeylCoefficients& coeffs) {
    const WeylBasis& basis = coeffs.basis;
    const int M = basis.dim();
    if (coeffs.c.rows() != M || coeffs.c.cols() != M) {
        throw DomainError("weyl_reconstruct: coefficient array shape does not match basis");
    }
    CMatrix out = CMatrix::Zero(M, M);
    for (int a = 0; a < M; ++a) {
        for (int p = 0; p < M; ++p) {
            const long long k = basis.label(p);
            cplx acc = 0.0;
            for (int n = 0; n < M; ++n) {
                if (coeffs.ordering == Ordering::UV) {
                    acc += coeffs.c(a, n) * unit_root(n * k, M);
                } else {
                    acc += coeffs.c(n, a) * unit_root(n * (k + a), M);
                }
            }
            out(wrap(p + a, M), p) = acc;
        }
    }
    return {basis, std::move(out)};
}

double transition_probability(const StateVector& a, const StateVector& b) {
    const double na = a.orthonormal().squaredNorm();
    const double nb = b.orthonormal().squaredNorm();
    if (na == 0.0 || nb == 0.0) {
        throw DomainError("transition_probability: zero vector");
    }
    if (a.size() != b.size()) {
        throw DomainError("transition_probability: dimension mismatch");
    }
    return std::norm(a.orthonormal().dot(b.orthonormal())) / (na * nb);
}

// ---------------------------------------------------------------------------

QbitFactorization qbit_factorize(int qbits) {
    if (qbits < 1 || qbits > 20) {
        throw DomainError("qbit_factorize: need 1 <= L <= 20");
    }
    CMatrix sigma1(2, 2);
    sigma1 << 0.0, 1.0, 1.0, 0.0;
    CMatrix sigma3(2, 2);
    sigma3 << 1.0, 0.0, 0.0, -1.0;
    QbitFactorization f;
    f.qbits = qbits;
    f.gates.assign(qbits, {sigma1, sigma3});
    return f;
}

CMatrix QbitFactorization::embed(int site, const CMatrix& gate) const {
    // Kronecker order: site L outermost, site 1 innermost (least significant).
    CMatrix out = CMatrix::Identity(1, 1);
    for (int s = qbits; s >= 1; --s) {
        const CMatrix& factor = (s == site) ? gate : CMatrix::Identity(2, 2).eval();
        CMatrix next(out.rows() * 2, out.cols() * 2);
        for (int i = 0; i < out.rows(); ++i) {
            for (int j = 0; j < out.cols(); ++j) {
                next.block(2 * i, 2 * j, 2, 2) = out(i, j) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

CMatrix QbitFactorization::monomial(int n, bool clock) const {
    // prod_m G_m^{n_m} = G_L^{n_L} (x) ... (x) G_1^{n_1}: the per-site factors act on
    // disjoint tensor slots, so the product is a single Kronecker product.
    CMatrix out = CMatrix::Identity(1, 1);
    for (int s = qbits; s >= 1; --s) {
        const CMatrix& gate = clock ? gates[s - 1].second : gates[s - 1].first;
        const CMatrix factor = ((n >> (s - 1)) & 1) ? gate : CMatrix::Identity(2, 2).eval();
        CMatrix next(out.rows() * 2, out.cols() * 2);
        for (int i = 0; i < out.rows(); ++i) {
            for (int j = 0; j < out.cols(); ++j) {
                next.block(2 * i, 2 * j, 2, 2) = out(i, j) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

CMatrix QbitFactorization::u_monomial(int n) const { return monomial(n, false); }

CMatrix QbitFactorization::v_monomial(int n) const { return monomial(n, true); }

CMatrix bitflip_operator(int qbits, int n) {
    const int M = 1 << qbits;
    CMatrix out = CMatrix::Zero(M, M);
    for (int k = 0; k < M; ++k) {
        out(k ^ n, k) = 1.0;
    }
    return out;
}

CMatrix phaseflip_operator(int qbits, int n) {
    const int M = 1 << qbits;
    CMatrix out = CMatrix::Zero(M, M);
    for (int k = 0; k < M; ++k) {
        out(k, k) = (std::popcount(static_cast<unsigned>(n & k)) % 2 == 0) ? 1.0 : -1.0;
    }
    return out;
}

WeylResiduals weyl_residuals(const WeylBasis& basis) {
    using Sparse = Eigen::SparseMatrix<cplx>;
    const int M = basis.dim();
    const Sparse u = build_shift_U(basis).matrix.sparseView();
    const Sparse v = build_clock_V(basis).matrix.sparseView();
    Sparse id(M, M);
    id.setIdentity();

    // U and V are monomial matrices, so repeated squaring stays O(M) per product.
    auto power = [&](const Sparse& base_in, int e) {
        Sparse result = id;
        Sparse base = base_in;
        while (e > 0) {
            if (e & 1) {
                result = (result * base).pruned();
            }
            e >>= 1;
            if (e > 0) {
                base = (base * base).pruned();
            }
        }
        return result;
    };
    auto sparse_max = [](const Sparse& a) {
        double m = 0.0;
        for (int k = 0; k < a.outerSize(); ++k) {
            for (Sparse::InnerIterator it(a, k); it; ++it) {
                m = std::max(m, std::abs(it.value()));
            }
        }
        return m;
    };

    WeylResiduals r;
    r.shiftPower = sparse_max(power(u, M) - id);
    r.clockPower = sparse_max(power(v, M) - id);
    const cplx w = std::polar(1.0, -2.0 * kPi / M);
    r.commutation = sparse_max(Sparse(u * v) - Sparse(v * u) * w);
    const CMatrix f = fourier_matrix(basis);
    r.completeness = max_abs(f * f.adjoint() - CMatrix::Identity(M, M));
    return r;
}

namespace {

double sparse_max_abs(const Eigen::SparseMatrix<cplx>& a) {
    double m = 0.0;
    for (int k = 0; k < a.outerSize(); ++k) {
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(a, k); it; ++it) {
            m = std::max(m, std::abs(it.value()));
        }
    }
    return m;
}

} // namespace

double qbit_structure_residual(const QbitFactorization& q, int max_exhaustive_qbits) {
    using Sparse = Eigen::SparseMatrix<cplx>;
    const int L = q.qbits;
    const int M = q.dim();
    std::vector<int> ns;
    if (L <= max_exhaustive_qbits) {
        for (int n = 0; n < M; ++n) ns.push_back(n);
    } else {
        for (int b = 0; b < L; ++b) ns.push_back(1 << b);
    }
    double r = 0.0;
    for (int n : ns) {
        r = std::max(r, max_abs(q.u_monomial(n) - bitflip_operator(L, n)));
        r = std::max(r, max_abs(q.v_monomial(n) - phaseflip_operator(L, n)));
    }
    Sparse id(M, M);
    id.setIdentity();
    for (int i = 1; i <= L; ++i) {
        const Sparse ui = q.embed(i, q.gates[i - 1].first).sparseView();
        const Sparse vi = q.embed(i, q.gates[i - 1].second).sparseView();
        r = std::max(r, sparse_max_abs(Sparse(vi * ui) + Sparse(ui * vi)));
        r = std::max(r, sparse_max_abs(Sparse(ui * ui) - id));
        r = std::max(r, sparse_max_abs(Sparse(vi * vi) - id));
    }
    return r;
}

double qbit_cyclic_mismatch(const QbitFactorization& q, int max_power) {
    using Sparse = Eigen::SparseMatrix<cplx>;
    const WeylBasis basis = WeylBasis::zero_based(q.dim());
    const Sparse u = build_shift_U(basis).matrix.sparseView();
    const Sparse v = build_clock_V(basis).matrix.sparseView();
    Sparse un(q.dim(), q.dim());
    un.setIdentity();
    Sparse vn = un;
    double r = 0.0;
    const int limit = std::min(max_power, q.dim() - 1);
    for (int n = 0; n <= limit; ++n) {
        r = std::max(r, max_abs(q.u_monomial(n) - CMatrix(un)));
        r = std::max(r, max_abs(q.v_monomial(n) - CMatrix(vn)));
        un = (u * un).pruned();
        vn = (v * vn).pruned();
    }
    return r;
}

} // namespace weylpath
