#pragma once

#include <string>

namespace weylpath {

enum class Labeling { ZeroBased, Symmetric };

/// Dimension plus index convention of a finite Weyl pair. Labels are the
/// integers used in phase formulas; positions are 0..M-1 storage offsets.
/// Labels are residues mod M, so phases such as e^{-2 pi i nk/M} agree
/// between the two labelings.
class WeylBasis {
  public:
    WeylBasis(int dim, Labeling labeling);

    static WeylBasis zero_based(int dim) { return {dim, Labeling::ZeroBased}; }
    /// M = 2K + 1, labels -K..K.
    static WeylBasis symmetric(int half_width) { return {2 * half_width + 1, Labeling::Symmetric}; }

    int dim() const { return dim_; }
    Labeling labeling() const { return labeling_; }
    int min_label() const { return labeling_ == Labeling::Symmetric ? -(dim_ / 2) : 0; }
    int max_label() const { return min_label() + dim_ - 1; }

    bool contains(int label) const { return label >= min_label() && label <= max_label(); }
    /// Throws DomainError for labels outside the range.
    int position(int label) const;
    int label(int position) const { return position + min_label(); }

    std::string describe() const;

    friend bool operator==(const WeylBasis&, const WeylBasis&) = default;

  private:
    int dim_;
    Labeling labeling_;
};

} // namespace weylpath
