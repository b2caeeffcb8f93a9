#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace spde2d {

// Runs fn(i) for i in [begin, end) on up to `threads` workers over contiguous
// chunks.  Callers must write to disjoint state per index; results are then
// independent of the worker count.
template <typename Fn>
void parallel_for(int begin, int end, int threads, const Fn& fn) {
    const int count = end - begin;
    if (count <= 0) return;
    threads = std::clamp(threads, 1, count);
    if (threads == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        const int lo = begin + static_cast<int>(static_cast<long long>(count) * w / threads);
        const int hi = begin + static_cast<int>(static_cast<long long>(count) * (w + 1) / threads);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

inline int default_thread_count() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace spde2d
