#pragma once

// Deterministic parallel-for: work items are indexed, output slots preassigned,
// so results are identical regardless of the worker count.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace spec2d {

inline int worker_count(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SPEC2D_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <typename F>
void parallel_for(std::size_t n, F&& body, int nthreads = 0) {
    int nw = worker_count(nthreads);
    if (nw <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (failed.load() && err) std::rethrow_exception(err);
}

} // namespace spec2d
