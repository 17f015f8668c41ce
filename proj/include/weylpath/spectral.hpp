#pragma once

#include <memory>

#include "weylpath/basis.hpp"
#include "weylpath/types.hpp"

namespace weylpath {

/// Unitary DFT over basis labels, backed by FFTW (any M, including primes).
///
///   forward(v)_m  = sum_n e^{-2 pi i m n/M} v_n / sqrt(M)
///   backward(v)_m = sum_n e^{+2 pi i m n/M} v_n / sqrt(M)
///
/// Indices are labels (so a symmetric basis gives the symmetric DFT). The
/// dense route is fourier_matrix(basis), which equals the forward matrix.
/// Instances are immutable; transforms may run concurrently.
class SymmetricDft {
  public:
    explicit SymmetricDft(const WeylBasis& basis);
    ~SymmetricDft();
    SymmetricDft(const SymmetricDft&) = delete;
    SymmetricDft& operator=(const SymmetricDft&) = delete;

    /// Process-wide instance per basis; plans are created once.
    static const SymmetricDft& cached(const WeylBasis& basis);

    const WeylBasis& basis() const { return basis_; }

    CVector forward(const CVector& v) const;
    CVector backward(const CVector& v) const;
    void forward_inplace(cplx* data) const;
    void backward_inplace(cplx* data) const;

  private:
    void run(bool forward, cplx* data) const;

    WeylBasis basis_;
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

} // namespace weylpath
