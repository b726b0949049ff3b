#include "zk/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace zk::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

// Plans are created once per length against a scratch buffer and reused via the
// new-array execute interface.  FFTW_UNALIGNED keeps them valid for any buffer.
PlanPair plans_for(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    fftw_complex* scratch = fftw_alloc_complex(static_cast<size_t>(n));
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    cache[n] = p;
    return p;
}

} // namespace

void forward(std::complex<double>* data, int n) {
    if (n <= 1) return;
    PlanPair p = plans_for(n);
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.fwd, raw, raw);
    double inv = 1.0 / n;
    for (int i = 0; i < n; ++i) data[i] *= inv;
}

void backward(std::complex<double>* data, int n) {
    if (n <= 1) return;
    PlanPair p = plans_for(n);
    auto* raw = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.bwd, raw, raw);
}

} // namespace zk::fft
