#include "weylpath/wavelet.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "weylpath/error.hpp"

namespace weylpath {

namespace {

constexpr int kTaps = 6;

// Eigenvector of the 6x6 integer-point refinement matrix sqrt2 h_{2n-k}.
RVector integer_eigenvector(const RefinementCoefficients& c, double eigenvalue) {
    RMatrix a = RMatrix::Zero(kTaps, kTaps);
    for (int n = 0; n < kTaps; ++n) {
        for (int k = 0; k < kTaps; ++k) {
            const int l = 2 * n - k;
            if (l >= 0 && l < kTaps) {
                a(n, k) = std::sqrt(2.0) * c.h[l];
            }
        }
    }
    Eigen::EigenSolver<RMatrix> solver(a);
    const auto values = solver.eigenvalues();
    int best = -1;
    double best_gap = 1e300;
    double second_gap = 1e300;
    for (int i = 0; i < values.size(); ++i) {
        const double gap = std::abs(values(i) - eigenvalue);
        if (gap < best_gap) {
            second_gap = best_gap;
            best_gap = gap;
            best = i;
        } else if (gap < second_gap) {
            second_gap = gap;
        }
    }
    if (best < 0 || best_gap > 1e-10 || second_gap < 1e-6) {
        throw NumericalError("scaling_on_dyadics: refinement eigenvalue not isolated");
    }
    return solver.eigenvectors().col(best).real();
}

void refine(const RefinementCoefficients& c, int level, std::vector<double>& f, double factor) {
    // f holds integer samples at stride 2^level; fill coarse-to-fine.
    const int scale = 1 << level;
    const int last = kWaveletSupport * scale;
    for (int lev = 1; lev <= level; ++lev) {
        const int step = 1 << (level - lev);
        for (int idx = step; idx < last; idx += 2 * step) {
            double sum = 0.0;
            for (int l = 0; l < kTaps; ++l) {
                const int y = 2 * idx - l * scale; // (2x - l) * 2^level
                if (y >= 0 && y <= last) {
                    sum += c.h[l] * f[y];
                }
            }
            f[idx] = factor * std::sqrt(2.0) * sum;
        }
    }
}

} // namespace

RefinementCoefficients daubechies_h() {
    const double r = std::sqrt(10.0);
    const double s = std::sqrt(5.0 + 2.0 * r);
    const double d = 16.0 * std::sqrt(2.0);
    return {{(1.0 + r + s) / d, (5.0 + r + 3.0 * s) / d, (10.0 - 2.0 * r + 2.0 * s) / d,
             (10.0 - 2.0 * r - 2.0 * s) / d, (5.0 + r - 3.0 * s) / d, (1.0 + r - s) / d}};
}

DyadicSamples scaling_on_dyadics(int level) {
    if (level < 0 || level > kMaxDyadicLevel) {
        throw DomainError("scaling_on_dyadics: level must be in 0..16");
    }
    const RefinementCoefficients c = daubechies_h();
    RVector s = integer_eigenvector(c, 1.0);
    s /= s.sum();
    RVector ds = integer_eigenvector(c, 0.5);
    double moment = 0.0;
    for (int n = 0; n < kTaps; ++n) {
        moment += n * ds(n);
    }
    ds /= -moment;

    const int scale = 1 << level;
    DyadicSamples out;
    out.level = level;
    out.values.assign(kWaveletSupport * scale + 1, 0.0);
    out.derivatives.assign(kWaveletSupport * scale + 1, 0.0);
    for (int n = 0; n <= kWaveletSupport; ++n) {
        out.values[n * scale] = s(n);
        out.derivatives[n * scale] = ds(n);
    }
    refine(c, level, out.values, 1.0);
    refine(c, level, out.derivatives, 2.0);
    return out;
}

DyadicSamples mother_wavelet_on_dyadics(int level) {
    if (level < 0 || level > kMaxDyadicLevel - 1) {
        throw DomainError("mother_wavelet_on_dyadics: level must be in 0..15");
    }
    const RefinementCoefficients c = daubechies_h();
    const DyadicSamples s = scaling_on_dyadics(level + 1);
    const int scale = 1 << level;
    const int last = kWaveletSupport * scale;
    DyadicSamples w;
    w.level = level;
    w.values.assign(last + 1, 0.0);
    w.derivatives.assign(last + 1, 0.0);
    for (int n = 0; n <= last; ++n) {
        double v = 0.0;
        double dv = 0.0;
        for (int l = 0; l < kTaps; ++l) {
            const int y = 2 * (2 * n - l * scale); // (2x - l) at level + 1
            if (y >= 0 && y <= 2 * last) {
                const double sign = (l % 2 == 0) ? 1.0 : -1.0;
                v += sign * c.h[kWaveletSupport - l] * s.values[y];
                dv += sign * c.h[kWaveletSupport - l] * s.derivatives[y];
            }
        }
        w.values[n] = std::sqrt(2.0) * v;
        w.derivatives[n] = 2.0 * std::sqrt(2.0) * dv;
    }
    return w;
}

std::array<double, 9> derivative_overlaps() {
    const RefinementCoefficients c = daubechies_h();
    RMatrix b = RMatrix::Zero(9, 9);
    for (int n = -4; n <= 4; ++n) {
        for (int l = 0; l < kTaps; ++l) {
            for (int m = 0; m < kTaps; ++m) {
                const int k = 2 * n + m - l;
                if (k >= -4 && k <= 4) {
                    b(n + 4, k + 4) += 4.0 * c.h[l] * c.h[m];
                }
            }
        }
    }
    Eigen::EigenSolver<RMatrix> solver(b);
    const auto values = solver.eigenvalues();
    int best = 0;
    for (int i = 1; i < values.size(); ++i) {
        if (std::abs(values(i) - 1.0) < std::abs(values(best) - 1.0)) {
            best = i;
        }
    }
    if (std::abs(values(best) - 1.0) > 1e-10) {
        throw NumericalError("derivative_overlaps: no unit eigenvalue");
    }
    RVector d = solver.eigenvectors().col(best).real();
    double moment = 0.0;
    for (int n = -4; n <= 4; ++n) {
        moment += n * n * d(n + 4);
    }
    d *= -2.0 / moment;
    std::array<double, 9> out{};
    for (int i = 0; i < 9; ++i) {
        out[i] = d(i);
    }
    // symmetric by construction up to rounding; make it exact
    for (int n = 1; n <= 4; ++n) {
        const double avg = 0.5 * (out[4 + n] + out[4 - n]);
        out[4 + n] = avg;
        out[4 - n] = avg;
    }
    return out;
}

double dyadic_overlap(const DyadicSamples& f, const std::vector<int>& shifts, bool derivative) {
    if (shifts.empty()) {
        throw DomainError("dyadic_overlap: no factors");
    }
    const auto [min_it, max_it] = std::minmax_element(shifts.begin(), shifts.end());
    const int lo = *max_it;                    // product vanishes below the largest shift
    const int hi = *min_it + kWaveletSupport; // and above the smallest shift + 5
    if (lo >= hi) {
        return 0.0;
    }
    const std::vector<double>& s = derivative ? f.derivatives : f.values;
    const int scale = 1 << f.level;
    const int first = lo * scale;
    const int last = hi * scale;
    double sum = 0.0;
    for (int i = first; i <= last; ++i) {
        double p = 1.0;
        for (int shift : shifts) {
            p *= s[i - shift * scale];
        }
        sum += (i == first || i == last) ? 0.5 * p : p;
    }
    return sum * f.spacing();
}

OverlapTables overlap_tables(const std::vector<int>& modes, int quadrature_points) {
    if (modes.empty()) {
        throw DomainError("overlap_tables: no modes");
    }
    if (quadrature_points < 1 || (quadrature_points & (quadrature_points - 1)) != 0) {
        throw DomainError("overlap_tables: quadrature points must be a power of two");
    }
    const int level = static_cast<int>(std::lround(std::log2(quadrature_points)));
    if (level + 1 > kMaxDyadicLevel) {
        throw DomainError("overlap_tables: quadrature points too large");
    }
    const int F = static_cast<int>(modes.size());
    const DyadicSamples coarse = scaling_on_dyadics(level);
    const DyadicSamples fine = scaling_on_dyadics(level + 1);
    const std::array<double, 9> d = derivative_overlaps();

    OverlapTables t;
    t.modes = modes;
    t.quadraturePoints = quadrature_points;
    t.D = RMatrix::Zero(F, F);
    t.Dtrapezoid = RMatrix::Zero(F, F);
    for (int a = 0; a < F; ++a) {
        for (int b = 0; b < F; ++b) {
            const int gap = modes[b] - modes[a];
            t.D(a, b) = std::abs(gap) <= 4 ? d[gap + 4] : 0.0;
            t.Dtrapezoid(a, b) = dyadic_overlap(coarse, {modes[a], modes[b]}, true);
        }
    }

    // One integral per sorted index multiset, then scattered to all permutations.
    std::vector<std::array<int, 4>> sets;
    for (int k = 0; k < F; ++k)
        for (int l = k; l < F; ++l)
            for (int m = l; m < F; ++m)
                for (int n = m; n < F; ++n)
                    sets.push_back({k, l, m, n});
    std::vector<double> value(sets.size());
    std::vector<double> delta(sets.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& q = sets[i];
        const std::vector<int> shifts{modes[q[0]], modes[q[1]], modes[q[2]], modes[q[3]]};
        value[i] = dyadic_overlap(coarse, shifts);
        delta[i] = std::abs(dyadic_overlap(fine, shifts) - value[i]);
    }
    t.Gamma.assign(static_cast<std::size_t>(F) * F * F * F, 0.0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::array<int, 4> p = sets[i];
        do {
            t.Gamma[((p[0] * F + p[1]) * F + p[2]) * F + p[3]] = value[i];
        } while (std::next_permutation(p.begin(), p.end()));
        t.convergenceDelta = std::max(t.convergenceDelta, delta[i]);
    }
    if (t.convergenceDelta > kOverlapConvergenceLimit) {
        throw NumericalError("overlap_tables: Gamma not converged (delta " + std::to_string(t.convergenceDelta) + ")");
    }
    return t;
}

} // namespace weylpath
