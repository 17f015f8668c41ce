// Serial vs OpenMP kernels, and the dense vs FFT application of the
// one-step propagator.

#include <benchmark/benchmark.h>

#include "weylpath/field_theory.hpp"
#include "weylpath/propagator.hpp"
#include "weylpath/scattering.hpp"

using namespace weylpath;

namespace {

kernels::Exec exec_of(const benchmark::State& st) {
    return st.range(1) ? kernels::Exec::Parallel : kernels::Exec::Serial;
}

void BM_Matvec(benchmark::State& st) {
    const int M = static_cast<int>(st.range(0));
    const CMatrix a = CMatrix::Random(M, M);
    const CVector x = CVector::Random(M);
    CVector y(M);
    for (auto _ : st) {
        kernels::matvec(exec_of(st), a, {x.data(), size_t(M)}, {y.data(), size_t(M)});
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * int64_t(M) * M);
}
BENCHMARK(BM_Matvec)->ArgsProduct({{201, 601, 1201}, {0, 1}});

void BM_Evolve(benchmark::State& st) {
    const PhaseGrid g(static_cast<int>(st.range(0)));
    const StepKernel x = full_step_kernel(free_step_kernel(g.basis(), kinetic_samples(g, 1.0), 0.07),
                                          gaussian_potential(g, 0.5, 2.0), 0.07);
    const StateVector psi = gaussian_packet(g, PacketSpec{2.5, 0.25, 1.0, 0.0});
    const EvolveOptions opt{kernels::Exec::Parallel, st.range(1) ? ApplyPath::Spectral : ApplyPath::Dense};
    for (auto _ : st) {
        benchmark::DoNotOptimize(evolve(x, psi, 100, opt).orthonormal().data());
    }
}
BENCHMARK(BM_Evolve)->ArgsProduct({{100, 300}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FieldAxis(benchmark::State& st) {
    const int M = static_cast<int>(st.range(0));
    const CMatrix a = CMatrix::Random(M, M);
    CVector data = CVector::Random(int64_t(M) * M * M);
    for (auto _ : st) {
        for (int axis = 0; axis < 3; ++axis) {
            kernels::apply_along_axis(exec_of(st), a, 3, axis, {data.data(), size_t(data.size())});
        }
        benchmark::DoNotOptimize(data.data());
    }
}
BENCHMARK(BM_FieldAxis)->ArgsProduct({{21, 41}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& st) {
    const WeylBasis b = WeylBasis::zero_based(5);
    const MixedHamiltonian h = mixed_symbol(b, random_hermitian(5, 1));
    for (auto _ : st) {
        benchmark::DoNotOptimize(brute_force_amplitude(b, h, 0.1, 3, 0, 0, true, exec_of(st)).amplitude);
    }
}
BENCHMARK(BM_BruteForce)->ArgsProduct({{5}, {0, 1}})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
