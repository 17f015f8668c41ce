#pragma once

#include <array>
#include <vector>

#include "weylpath/types.hpp"

namespace weylpath {

/// Daubechies L = 3 filter h_0..h_5 (support [0, 5]).
struct RefinementCoefficients {
    std::array<double, 6> h{};
};

RefinementCoefficients daubechies_h();

inline constexpr int kWaveletSupport = 5;
inline constexpr int kMaxDyadicLevel = 16;

/// Samples at x = n / 2^level for n = 0 .. 5 * 2^level.
struct DyadicSamples {
    int level = 0;
    std::vector<double> values;
    std::vector<double> derivatives;

    double spacing() const { return 1.0 / static_cast<double>(1 << level); }
    double x(int n) const { return n * spacing(); }
};

/// s(x) and s'(x) from the refinement equation s(x) = sum_l sqrt2 h_l s(2x - l).
/// Integer values are the eigenvalue-1 eigenvector (sum s(n) = 1); integer
/// derivatives the eigenvalue-1/2 eigenvector (sum n s'(n) = -1).
/// Throws DomainError for level outside 0..16 and NumericalError when the
/// eigenvalue is not isolated.
DyadicSamples scaling_on_dyadics(int level);

/// w(x) = sum_l (-1)^l h_{5-l} sqrt2 s(2x - l) on the level-j mesh (uses the
/// level j+1 scaling samples). Derivatives are filled the same way.
DyadicSamples mother_wavelet_on_dyadics(int level);

/// d_n = int s'(x) s'(x - n) dx for n = -4..4, from the exact eigen-system
/// d = 4 sum_{l,m} h_l h_m d_{2n+m-l}, normalized by sum n^2 d_n = -2.
std::array<double, 9> derivative_overlaps();

/// Trapezoid integral of a product of shifted samples over the union of
/// their supports. Shifts are in whole units.
double dyadic_overlap(const DyadicSamples& f, const std::vector<int>& shifts, bool derivative = false);

struct OverlapTables {
    std::vector<int> modes;
    int quadraturePoints = 256; ///< per unit length
    RMatrix D;                  ///< D_mn = int s'(x - m) s'(x - n) dx (exact)
    RMatrix Dtrapezoid;         ///< the same from dyadic derivative samples
    std::vector<double> Gamma;  ///< F^4, row-major (k, l, m, n)
    double convergenceDelta = 0.0; ///< max |Gamma(q) - Gamma(2q)|

    int size() const { return static_cast<int>(modes.size()); }
    double gamma(int k, int l, int m, int n) const {
        const int F = size();
        return Gamma[((k * F + l) * F + m) * F + n];
    }
};

inline constexpr double kOverlapConvergenceLimit = 1e-4;

/// Tables for translates s(x - modes[i]). quadrature_points must be a power
/// of two (per unit length) with 2 * quadrature_points <= 2^16. Throws
/// NumericalError when doubling shifts any Gamma by more than 1e-4.
OverlapTables overlap_tables(const std::vector<int>& modes, int quadrature_points = 256);

} // namespace weylpath
