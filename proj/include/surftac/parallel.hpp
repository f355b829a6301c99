#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace surftac {

// Runs fn(i) for i in [0, n). Items must be independent and write to
// disjoint slots so the result does not depend on scheduling.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned max_threads = 0) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned nthreads = max_threads == 0 ? (hw == 0 ? 1 : hw) : max_threads;
    nthreads = std::min<std::size_t>(nthreads, n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) {
        workers.emplace_back([t, n, nthreads, &fn] {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace surftac
