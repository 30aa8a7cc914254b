#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace metricline {

// Worker cap from METRICLINE_THREADS (0 or unset = hardware concurrency).
int thread_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; callers
// keep determinism by writing into per-index slots and reducing in order.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n == 0 ? 1 : n);
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace metricline
