#include "aniso_mhd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace mhd {
namespace {

// One set of in-place c2c plans per grid size, shared through a mutex.
// FFTW_ESTIMATE keeps plan selection independent of runtime measurements.
struct PlanSet {
    int n1 = 0, n2 = 0;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    PlanSet(int n1_, int n2_) : n1(n1_), n2(n2_) {
        buf = fftw_alloc_complex(static_cast<std::size_t>(n1) * n2);
        fwd = fftw_plan_dft_2d(n1, n2, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_2d(n1, n2, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanSet() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    PlanSet(const PlanSet&) = delete;
    PlanSet& operator=(const PlanSet&) = delete;
};

std::mutex g_mutex;

PlanSet& plans_for(const GridSpec& g) {
    static std::map<std::pair<int, int>, std::unique_ptr<PlanSet>> cache;
    auto key = std::make_pair(g.n1, g.n2);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<PlanSet>(g.n1, g.n2)).first;
    return *it->second;
}

}  // namespace

SpectralField forward(const PhysicalField& f) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSet& p = plans_for(f.grid);
    const std::size_t n = f.grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        p.buf[i][0] = f.val[i];
        p.buf[i][1] = 0.0;
    }
    fftw_execute(p.fwd);
    SpectralField out(f.grid);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        out.coef[i] = Complex(p.buf[i][0] * scale, p.buf[i][1] * scale);
    return out;
}

PhysicalField inverse(const SpectralField& f) {
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSet& p = plans_for(f.grid);
    const std::size_t n = f.grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        p.buf[i][0] = f.coef[i].real();
        p.buf[i][1] = f.coef[i].imag();
    }
    fftw_execute(p.bwd);
    PhysicalField out(f.grid);
    for (std::size_t i = 0; i < n; ++i) out.val[i] = p.buf[i][0];
    return out;
}

}  // namespace mhd
