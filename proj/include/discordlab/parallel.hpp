// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace discordlab {

/// Worker count resolution: explicit request wins, otherwise the
/// DISCORDLAB_THREADS environment variable, otherwise hardware concurrency.
/// A value of 0 means "auto" at every level.
inline int worker_count(int requested = 0) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("DISCORDLAB_THREADS")) {
            n = std::atoi(env);
        }
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return n;
}

/// Static contiguous partition of [0, n) across workers. The callable receives
/// each index exactly once; callers write results into index-addressed slots,
/// which keeps output identical for any worker count.
template <class F>
void parallel_for(std::size_t n, F&& body, int workers = 0) {
    const int w = worker_count(workers);
    if (w == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(w), n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    const std::size_t chunk = (n + nw - 1) / nw;
    for (std::size_t t = 0; t < nw; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace discordlab
