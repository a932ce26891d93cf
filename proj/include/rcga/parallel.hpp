#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace rcga {

// Worker count: explicit request > RCGA_WORKERS env var > hardware.
inline int resolve_workers(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("RCGA_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0)
            return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

// Runs fn(0), ..., fn(count-1) on a bounded pool. Each index must be an
// independent work item; callers get determinism by writing results into
// per-index slots and folding them in index order afterwards.
inline void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn,
                         int workers = 0) {
    if (count <= 0)
        return;
    const int pool = std::min<std::int64_t>(resolve_workers(workers), count);
    if (pool <= 1) {
        for (std::int64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(pool));
    std::atomic<bool> failed{false};
    for (int w = 0; w < pool; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= count || failed.load(std::memory_order_relaxed))
                    return;
                try {
                    fn(i);
                } catch (...) {
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : threads)
        t.join();
    if (failed.load())
        throw std::runtime_error("parallel_for: a work item threw");
}

} // namespace rcga
