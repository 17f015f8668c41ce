#include "weylpath/state.hpp"

#include <cmath>
#include <sstream>

#include "weylpath/error.hpp"

namespace weylpath {

WeylBasis::WeylBasis(int dim, Labeling labeling) : dim_(dim), labeling_(labeling) {
    if (dim < 2) {
        throw DomainError("basis dimension must be >= 2, got " + std::to_string(dim));
    }
    if (labeling == Labeling::Symmetric && dim % 2 == 0) {
        throw DomainError("symmetric labeling needs odd M = 2K+1, got " + std::to_string(dim));
    }
}

int WeylBasis::position(int label) const {
    if (!contains(label)) {
        std::ostringstream os;
        os << "label " << label << " outside [" << min_label() << ", " << max_label() << "]";
        throw DomainError(os.str());
    }
    return label - min_label();
}

std::string WeylBasis::describe() const {
    std::ostringstream os;
    os << "M=" << dim_ << (labeling_ == Labeling::Symmetric ? " symmetric" : " zero-based");
    return os.str();
}

StateVector::StateVector(WeylBasis basis, CVector orthonormal, double weight, Normalization convention)
    : basis_(basis), amp_(std::move(orthonormal)), weight_(weight), convention_(convention) {
    if (amp_.size() != basis_.dim()) {
        throw DomainError("state length " + std::to_string(amp_.size()) + " does not match basis dimension " +
                          std::to_string(basis_.dim()));
    }
    if (!(weight_ > 0.0)) {
        throw DomainError("state weight must be positive");
    }
}

StateVector StateVector::from_delta_normalized(WeylBasis basis, const CVector& values, double weight) {
    return StateVector(basis, values * std::sqrt(weight), weight, Normalization::DeltaNormalized);
}

StateVector StateVector::basis_vector(WeylBasis basis, int label, double weight) {
    CVector v = CVector::Zero(basis.dim());
    v(basis.position(label)) = 1.0;
    return StateVector(basis, std::move(v), weight);
}

CVector StateVector::values() const {
    if (convention_ == Normalization::Orthonormal) {
        return amp_;
    }
    return amp_ / std::sqrt(weight_);
}

StateVector StateVector::as(Normalization convention) const {
    StateVector out = *this;
    out.convention_ = convention;
    return out;
}

} // namespace weylpath
