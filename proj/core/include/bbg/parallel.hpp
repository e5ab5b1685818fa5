#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bbg {

// Worker count: BBG_THREADS if set, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("BBG_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count). Each index is claimed atomically, so
// results must be written into per-index slots; reductions then happen
// in index order on the caller side, keeping reports deterministic.
template <typename Fn>
void parallel_for(long long count, Fn&& fn, int threads = 0) {
    if (threads <= 0) threads = worker_count();
    if (threads == 1 || count <= 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace bbg
