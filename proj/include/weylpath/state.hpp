#pragma once

#include "weylpath/basis.hpp"
#include "weylpath/types.hpp"

namespace weylpath {

enum class Normalization { Orthonormal, DeltaNormalized };

/// Complex amplitudes over a basis.
///
/// Storage is always the orthonormal amplitude <e_k|psi>. The convention tag
/// only selects how values() exports them: DeltaNormalized divides by
/// sqrt(weight), matching |p_l> = |v_l>/sqrt(eps). Switching the tag never
/// touches storage, so conversions round-trip bit-identically.
class StateVector {
  public:
    StateVector(WeylBasis basis, CVector orthonormal, double weight = 1.0,
                Normalization convention = Normalization::Orthonormal);

    /// Import values given in the delta-normalized convention.
    static StateVector from_delta_normalized(WeylBasis basis, const CVector& values, double weight);
    static StateVector basis_vector(WeylBasis basis, int label, double weight = 1.0);

    const WeylBasis& basis() const { return basis_; }
    double weight() const { return weight_; }
    Normalization convention() const { return convention_; }

    const CVector& orthonormal() const { return amp_; }
    CVector& orthonormal() { return amp_; }
    CVector values() const;

    StateVector as(Normalization convention) const;

    /// Orthonormal-convention norm sqrt(sum |psi_k|^2).
    double norm() const { return amp_.norm(); }
    int size() const { return static_cast<int>(amp_.size()); }

  private:
    WeylBasis basis_;
    CVector amp_;
    double weight_;
    Normalization convention_;
};

} // namespace weylpath
