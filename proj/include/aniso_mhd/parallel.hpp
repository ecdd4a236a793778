#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace mhd {

// Worker count from ANISO_MHD_THREADS; absent or invalid means single-threaded.
inline int thread_count() {
    const char* env = std::getenv("ANISO_MHD_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 1 ? n : 1;
}

// Static partition of [0, n); results must be written to disjoint slots so
// the outcome does not depend on the worker count.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
    const int workers = thread_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &f] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace mhd
