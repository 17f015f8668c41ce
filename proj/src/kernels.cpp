#include "weylpath/kernels.hpp"

#include <omp.h>

#include "weylpath/error.hpp"

namespace weylpath::kernels {

void set_thread_count(int threads) {
    if (threads < 0) {
        throw DomainError("thread count must be >= 0");
    }
    if (threads == 0) {
        omp_set_num_threads(omp_get_num_procs());
    } else {
        omp_set_num_threads(threads);
    }
}

int thread_count() { return omp_get_max_threads(); }

namespace {

inline cplx row_dot(const CMatrix& a, Eigen::Index row, std::span<const cplx> x) {
    cplx acc = 0.0;
    const Eigen::Index n = a.cols();
    for (Eigen::Index j = 0; j < n; ++j) {
        acc += a(row, j) * x[j];
    }
    return acc;
}

} // namespace

void matvec(Exec exec, const CMatrix& a, std::span<const cplx> x, std::span<cplx> y) {
    if (static_cast<Eigen::Index>(x.size()) != a.cols() || static_cast<Eigen::Index>(y.size()) != a.rows()) {
        throw DomainError("matvec: dimension mismatch");
    }
    const Eigen::Index rows = a.rows();
    if (exec == Exec::Serial) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            y[i] = row_dot(a, i, x);
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
        y[i] = row_dot(a, i, x);
    }
}

void scale(Exec exec, std::span<const cplx> phases, std::span<cplx> data) {
    if (phases.size() != data.size()) {
        throw DomainError("scale: length mismatch");
    }
    const std::int64_t n = static_cast<std::int64_t>(data.size());
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            data[i] *= phases[i];
        }
        return;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        data[i] *= phases[i];
    }
}

namespace {

// One fibre along `axis`: `outer` indexes the slower axes, `inner` the
// faster ones; stride between fibre elements is `inner_extent`.
void apply_fibre(const CMatrix& a, std::span<cplx> data, std::int64_t base, std::int64_t stride, cplx* scratch) {
    const Eigen::Index M = a.rows();
    for (Eigen::Index i = 0; i < M; ++i) {
        cplx acc = 0.0;
        for (Eigen::Index j = 0; j < M; ++j) {
            acc += a(i, j) * data[base + j * stride];
        }
        scratch[i] = acc;
    }
    for (Eigen::Index i = 0; i < M; ++i) {
        data[base + i * stride] = scratch[i];
    }
}

} // namespace

void apply_along_axis(Exec exec, const CMatrix& a, int modes, int axis, std::span<cplx> data) {
    if (a.rows() != a.cols()) {
        throw DomainError("apply_along_axis: matrix must be square");
    }
    if (axis < 0 || axis >= modes) {
        throw DomainError("apply_along_axis: axis out of range");
    }
    const std::int64_t M = a.rows();
    std::int64_t total = 1;
    for (int i = 0; i < modes; ++i) {
        total *= M;
    }
    if (static_cast<std::int64_t>(data.size()) != total) {
        throw DomainError("apply_along_axis: tensor size does not match M^modes");
    }
    std::int64_t inner = 1;
    for (int i = axis + 1; i < modes; ++i) {
        inner *= M;
    }
    const std::int64_t outer = total / (inner * M);
    const std::int64_t fibres = outer * inner;

    if (exec == Exec::Serial) {
        std::vector<cplx> scratch(M);
        for (std::int64_t f = 0; f < fibres; ++f) {
            const std::int64_t o = f / inner;
            const std::int64_t r = f % inner;
            apply_fibre(a, data, o * M * inner + r, inner, scratch.data());
        }
        return;
    }
#pragma omp parallel
    {
        std::vector<cplx> scratch(M);
#pragma omp for schedule(static)
        for (std::int64_t f = 0; f < fibres; ++f) {
            const std::int64_t o = f / inner;
            const std::int64_t r = f % inner;
            apply_fibre(a, data, o * M * inner + r, inner, scratch.data());
        }
    }
}

namespace {

template <class T>
T tree_sum(const T* v, std::size_t n) {
    if (n == 0) {
        return T{};
    }
    if (n <= 8) {
        T acc = v[0];
        for (std::size_t i = 1; i < n; ++i) {
            acc += v[i];
        }
        return acc;
    }
    const std::size_t half = n / 2;
    return tree_sum(v, half) + tree_sum(v + half, n - half);
}

} // namespace

cplx pairwise_sum(std::span<const cplx> values) { return tree_sum(values.data(), values.size()); }

double pairwise_sum(std::span<const double> values) { return tree_sum(values.data(), values.size()); }

double squared_norm(std::span<const cplx> values) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        sq[i] = std::norm(values[i]);
    }
    return pairwise_sum(std::span<const double>(sq));
}

} // namespace weylpath::kernels
