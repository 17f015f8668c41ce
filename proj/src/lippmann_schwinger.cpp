#include <cmath>
#include <sstream>

#include "weylpath/error.hpp"
#include "weylpath/scattering.hpp"

namespace weylpath {

namespace {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre on [a, b] by Newton iteration on P_n.
void gauss_legendre(int n, double a, double b, Rule& out) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) {
                break;
            }
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        out.nodes.push_back(mid - half * x);
        out.weights.push_back(half * 2.0 / ((1.0 - x * x) * dp * dp));
    }
}

struct Solution {
    std::vector<double> momenta;
    std::vector<cplx> t;
};

Solution solve(double lambda, double alpha, double mass, double p0, int points) {
    const double cutoff = 2.0 * p0 + std::sqrt(160.0 * alpha);
    Rule rule;
    gauss_legendre(points / 2, 0.0, 2.0 * p0, rule);
    gauss_legendre(points - points / 2, 2.0 * p0, cutoff, rule);
    const int n = static_cast<int>(rule.nodes.size());

    // Unknowns: T(+q_j), T(-q_j), T(+p0), T(-p0).
    const int dim = 2 * n + 2;
    std::vector<double> k(dim);
    std::vector<cplx> d(dim);
    double subtracted = 0.0;
    for (int j = 0; j < n; ++j) {
        const double q = rule.nodes[j];
        const double w = rule.weights[j] * 2.0 * mass / (p0 * p0 - q * q);
        k[j] = q;
        k[n + j] = -q;
        d[j] = w;
        d[n + j] = w;
        subtracted += w;
    }
    // PV of int_0^Q 2m dq/(p0^2 - q^2) plus the -i pi delta from +i0.
    const double pv = mass * std::log((cutoff + p0) / (cutoff - p0)) / p0;
    const cplx pole = cplx{pv - subtracted, -kPi * mass / p0};
    k[2 * n] = p0;
    k[2 * n + 1] = -p0;
    d[2 * n] = pole;
    d[2 * n + 1] = pole;

    CMatrix a(dim, dim);
    CVector rhs(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            a(r, c) = (r == c ? 1.0 : 0.0) - gaussian_potential_momentum(lambda, alpha, k[r], k[c]) * d[c];
        }
        rhs(r) = gaussian_potential_momentum(lambda, alpha, k[r], p0);
    }
    Eigen::PartialPivLU<CMatrix> lu(a);
    const CVector t = lu.solve(rhs);
    const double residual = (a * t - rhs).norm();
    if (!t.allFinite() || residual > 1e-8 * (1.0 + rhs.norm())) {
        throw NumericalError("ls_oracle: linear solve failed (residual " + std::to_string(residual) + ")");
    }
    Solution s;
    s.momenta = std::move(k);
    s.t.assign(t.data(), t.data() + dim);
    return s;
}

} // namespace

double gaussian_potential_momentum(double lambda, double alpha, double p, double q) {
    return lambda / (2.0 * kPi) * std::sqrt(kPi / alpha) * std::exp(-(p - q) * (p - q) / (4.0 * alpha));
}

LsResult ls_oracle(double lambda, double alpha, double mass, double p0, int quadrature_points) {
    if (!(p0 > 0.0)) {
        throw DomainError("ls_oracle: p0 must be > 0");
    }
    if (quadrature_points < 64) {
        throw DomainError("ls_oracle: at least 64 quadrature points required");
    }
    if (!(alpha > 0.0) || !(mass > 0.0)) {
        throw DomainError("ls_oracle: alpha and mass must be > 0");
    }
    const Solution base = solve(lambda, alpha, mass, p0, quadrature_points);
    const Solution fine = solve(lambda, alpha, mass, p0, 2 * quadrature_points);

    const int on = static_cast<int>(base.t.size()) - 2;
    const cplx t_base = base.t[on];
    const cplx t_fine = fine.t[fine.t.size() - 2];

    LsResult out;
    out.momenta = base.momenta;
    out.halfShell = base.t;
    out.onShell = t_base;
    out.backward = base.t[on + 1];
    out.convergenceDelta = std::abs(t_fine) == 0.0 ? 0.0 : std::abs(t_fine - t_base) / std::abs(t_fine);
    if (out.convergenceDelta > kLsConvergenceTolerance) {
        std::ostringstream msg;
        msg << "ls_oracle: on-shell T moved by " << out.convergenceDelta << " (relative) when doubling nodes";
        throw NumericalError(msg.str());
    }
    return out;
}

} // namespace weylpath
