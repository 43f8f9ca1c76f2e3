#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace patc {

// Runs chunk_fn(begin, end) over a partition of [0, n). With threads <= 1 the
// whole range runs on the calling thread. Chunk boundaries depend only on n
// and the thread count, and each chunk owns a contiguous index range, so
// callers that write disjoint outputs per index stay deterministic.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
    if (n == 0) return;
    std::size_t nt = threads > 1 ? std::size_t(threads) : 1;
    if (nt > n) nt = n;
    if (nt == 1) {
        chunk_fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t w = 1; w < nt; ++w) {
        std::size_t b = w * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(chunk_fn, b, e);
    }
    chunk_fn(0, std::min(n, chunk));
    for (auto& th : pool) th.join();
}

} // namespace patc
