#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace swc {

/// Worker count used by parallel_for. Defaults to 1.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Splits [0, count) into contiguous chunks and runs fn(begin, end) on each.
/// Chunks are disjoint, so fn may write to per-index outputs without locking.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), count / 4096 + 1);
    if (workers <= 1) {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin < end) pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    fn(std::size_t{0}, std::min(count, chunk));
}

}  // namespace swc
