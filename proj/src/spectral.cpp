#include "weylpath/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "weylpath/error.hpp"

namespace weylpath {

namespace {

// FFTW's planner is not re-entrant; execution with the new-array interface is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

struct SymmetricDft::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    // Storage position -> zero-based FFT index (label mod M).
    std::vector<int> fft_index;
};

SymmetricDft::SymmetricDft(const WeylBasis& basis) : basis_(basis), plans_(std::make_unique<Plans>()) {
    const int M = basis.dim();
    plans_->fft_index.resize(M);
    for (int p = 0; p < M; ++p) {
        int j = basis.label(p) % M;
        plans_->fft_index[p] = j < 0 ? j + M : j;
    }
    std::vector<cplx> scratch_in(M), scratch_out(M);
    auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
    std::lock_guard<std::mutex> lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->forward = fftw_plan_dft_1d(M, in, out, FFTW_FORWARD, flags);
    plans_->backward = fftw_plan_dft_1d(M, in, out, FFTW_BACKWARD, flags);
    if (plans_->forward == nullptr || plans_->backward == nullptr) {
        throw NumericalError("FFTW plan creation failed for M=" + std::to_string(M));
    }
}

SymmetricDft::~SymmetricDft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plans_->forward);
    fftw_destroy_plan(plans_->backward);
}

const SymmetricDft& SymmetricDft::cached(const WeylBasis& basis) {
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<SymmetricDft>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(basis.dim(), static_cast<int>(basis.labeling()));
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::make_unique<SymmetricDft>(basis)).first;
    }
    return *it->second;
}

void SymmetricDft::run(bool forward, cplx* data) const {
    const int M = basis_.dim();
    std::vector<cplx> in(M), out(M);
    const auto& idx = plans_->fft_index;
    for (int p = 0; p < M; ++p) {
        in[idx[p]] = data[p];
    }
    fftw_execute_dft(forward ? plans_->forward : plans_->backward, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    for (int p = 0; p < M; ++p) {
        data[p] = out[idx[p]] * scale;
    }
}

void SymmetricDft::forward_inplace(cplx* data) const { run(true, data); }
void SymmetricDft::backward_inplace(cplx* data) const { run(false, data); }

CVector SymmetricDft::forward(const CVector& v) const {
    if (v.size() != basis_.dim()) {
        throw DomainError("SymmetricDft: length mismatch");
    }
    CVector out = v;
    run(true, out.data());
    return out;
}

CVector SymmetricDft::backward(const CVector& v) const {
    if (v.size() != basis_.dim()) {
        throw DomainError("SymmetricDft: length mismatch");
    }
    CVector out = v;
    run(false, out.data());
    return out;
}

} // namespace weylpath
