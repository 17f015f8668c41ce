#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "weylpath/types.hpp"

// Data-parallel inner loops. Every routine has a serial reference and an
// OpenMP version selected by Exec. The parallel versions split work so that
// each output element is produced by the same sequence of floating-point
// operations as the serial one, so both paths agree bit-for-bit regardless
// of thread count.
namespace weylpath::kernels {

enum class Exec { Serial, Parallel };

/// 0 selects the OpenMP default.
void set_thread_count(int threads);
int thread_count();

/// y = A x.
void matvec(Exec exec, const CMatrix& a, std::span<const cplx> x, std::span<cplx> y);

/// data *= phases elementwise.
void scale(Exec exec, std::span<const cplx> phases, std::span<cplx> data);

/// Apply an M x M matrix along one axis of a row-major tensor with `modes`
/// axes of extent M each (axis 0 slowest). In place.
void apply_along_axis(Exec exec, const CMatrix& a, int modes, int axis, std::span<cplx> data);

/// Fixed-shape pairwise (tree) summation; result is independent of the
/// execution path.
cplx pairwise_sum(std::span<const cplx> values);
double pairwise_sum(std::span<const double> values);

/// sum_i |v_i|^2 by pairwise summation.
double squared_norm(std::span<const cplx> values);

} // namespace weylpath::kernels
