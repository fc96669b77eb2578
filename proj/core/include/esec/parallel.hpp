#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace esec {

inline int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(i) for i in [0, count). Work is split into fixed-size chunks that
/// are claimed dynamically, so results written into preallocated slots are
/// identical for any job count.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn,
                         std::size_t chunk = 64) {
    const int n_threads = std::min<int>(resolve_jobs(jobs), static_cast<int>((count + chunk - 1) / std::max<std::size_t>(chunk, 1)));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= count) return;
            const std::size_t end = std::min(count, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace esec
